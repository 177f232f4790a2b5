"""ARFF reading and writing shared by the MULAN, MEKA and KEEL dialects.

The grammar is the common denominator of the three tools: `%` comments,
case-insensitive `@relation` / `@attribute` / `@data` keywords, identifiers
quoted with single or double quotes, dense comma-separated rows and sparse
`{index value, ...}` rows with 0-based indices (unstated sparse cells are
zero / the first category). KEEL's extra `@inputs` / `@outputs` lines and
numeric range suffixes are understood; ranges are written back for KEEL
output only.

Dialects differ solely in where labels live and how they are declared:
MULAN names them in a sibling XML file, MEKA embeds `-C <k>` in the
relation name (positive: first k attributes, negative: last |k|), KEEL
lists them under `@outputs`.
"""

from __future__ import annotations

import math
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..dataset import LABEL, NOMINAL, NUMERIC, AttributeMeta, MLDataset

MULAN_XMLNS = "http://mulan.sourceforge.net/labels"

_BARE_NAME = re.compile(r"^[^\s'\",{}%][^\s,{}]*")
_NUMERIC_KINDS = {"numeric", "real", "integer"}
_BIBTEX_ENTRY = re.compile(r"@\w+\s*\{")


class FormatError(ValueError):
    """Parse or write failure, carrying file position when known."""

    def __init__(self, message: str, path=None, line: int | None = None, col: int | None = None):
        self.path, self.line, self.col = path, line, col
        where = str(path) if path is not None else ""
        if line is not None:
            where += f":{line}"
            if col is not None:
                where += f":{col}"
        super().__init__(f"{where}: {message}" if where else message)


def format_number(value: float) -> str:
    """Shortest decimal that reads back to the same float."""
    value = float(value)
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def _unescape(ch: str) -> str:
    return {"n": "\n", "t": "\t", "r": "\r"}.get(ch, ch)


def _quote(text: str) -> str:
    body = text.replace("\\", "\\\\").replace("'", "\\'")
    body = body.replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r")
    return f"'{body}'"


def quote_if_needed(name: str) -> str:
    if name and not re.search(r"[\s,'\"{}%\\]", name):
        return name
    return _quote(name)


def _read_quoted(line: str, start: int, path, line_no: int) -> tuple[str, int]:
    quote = line[start]
    buf = []
    i = start + 1
    while i < len(line):
        c = line[i]
        if c == "\\" and i + 1 < len(line):
            buf.append(_unescape(line[i + 1]))
            i += 2
            continue
        if c == quote:
            return "".join(buf), i + 1
        buf.append(c)
        i += 1
    raise FormatError("unterminated quoted string", path, line_no, start + 1)


def split_values(line: str, path, line_no: int) -> list[tuple[str, int, bool]]:
    """Split a comma-separated ARFF payload into (text, column, was_quoted)."""
    cells = []
    i, n = 0, len(line)
    while True:
        while i < n and line[i] in " \t":
            i += 1
        start = i
        if i < n and line[i] in "'\"":
            text, i = _read_quoted(line, i, path, line_no)
            while i < n and line[i] in " \t":
                i += 1
            if i < n and line[i] != ",":
                raise FormatError("expected comma after quoted value", path, line_no, i + 1)
            cells.append((text, start + 1, True))
        else:
            j = line.find(",", i)
            j = n if j < 0 else j
            cells.append((line[i:j].strip(), start + 1, False))
            i = j
        if i >= n:
            return cells
        i += 1  # past the comma
        if i >= n:  # trailing comma: one final empty cell
            cells.append(("", n + 1, False))
            return cells


@dataclass
class RawAttribute:
    name: str
    kind: str  # numeric | nominal
    categories: tuple[str, ...] | None
    line: int


@dataclass
class ArffContent:
    relation: str
    attributes: list[RawAttribute]
    data_rows: list[tuple[int, str]]  # (line number, raw payload)
    inputs: list[str] | None = None
    outputs: list[str] | None = None
    leading_comment: str | None = None
    path: Path | None = None


def _parse_attribute_line(rest: str, path, line_no: int) -> RawAttribute:
    rest = rest.strip()
    if not rest:
        raise FormatError("@attribute without a name", path, line_no)
    if rest[0] in "'\"":
        name, pos = _read_quoted(rest, 0, path, line_no)
    else:
        match = _BARE_NAME.match(rest)
        if not match:
            raise FormatError("cannot read attribute name", path, line_no)
        name, pos = match.group(0), match.end()
    spec = rest[pos:].strip()
    if not spec:
        raise FormatError(f"attribute {name!r} has no type", path, line_no)
    if spec.startswith("{"):
        if not spec.endswith("}"):
            raise FormatError("unterminated category list", path, line_no)
        cats = [c for c, _, quoted in split_values(spec[1:-1], path, line_no) if c or quoted]
        if not cats:
            raise FormatError(f"attribute {name!r} has an empty category list", path, line_no)
        return RawAttribute(name, NOMINAL, tuple(cats), line_no)
    head = spec.split()[0].lower() if spec.split() else ""
    head = head.split("[")[0] or head  # tolerate "real[0,1]" with no space
    if head in _NUMERIC_KINDS:
        return RawAttribute(name, NUMERIC, None, line_no)  # range suffix ignored
    raise FormatError(f"unsupported attribute type {spec!r}", path, line_no)


def parse_arff(path) -> ArffContent:
    path = Path(path)
    relation = None
    attributes: list[RawAttribute] = []
    data_rows: list[tuple[int, str]] = []
    inputs = outputs = None
    leading: list[str] = []
    before_relation = True
    in_data = False
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read file ({exc})", path) from exc
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("%"):
            if before_relation:
                leading.append(line[1:].removeprefix(" "))
            continue
        if in_data:
            data_rows.append((line_no, line))
            continue
        lower = line.lower()
        if lower.startswith("@relation"):
            before_relation = False
            rest = line[len("@relation"):].strip()
            if rest and rest[0] in "'\"":
                relation, _ = _read_quoted(rest, 0, path, line_no)
            else:
                relation = rest
        elif lower.startswith("@attribute"):
            before_relation = False
            attributes.append(_parse_attribute_line(line[len("@attribute"):], path, line_no))
        elif lower.startswith("@inputs"):
            inputs = [c for c, _, _ in split_values(line[len("@inputs"):].strip(), path, line_no) if c]
        elif lower.startswith("@outputs"):
            outputs = [c for c, _, _ in split_values(line[len("@outputs"):].strip(), path, line_no) if c]
        elif lower.startswith("@data"):
            in_data = True
        else:
            raise FormatError(f"unexpected header line {line.split()[0]!r}", path, line_no)
    if relation is None:
        raise FormatError("missing @relation", path)
    if not attributes:
        raise FormatError("no @attribute declarations", path)
    if not in_data:
        raise FormatError("missing @data section", path)
    names = [a.name for a in attributes]
    if len(set(names)) != len(names):
        dup = next(x for x in names if names.count(x) > 1)
        raise FormatError(f"duplicate attribute name {dup!r}", path)
    comment = "\n".join(leading).strip()
    citation = comment if comment and _BIBTEX_ENTRY.search(comment) else None
    return ArffContent(
        relation=relation,
        attributes=attributes,
        data_rows=data_rows,
        inputs=inputs,
        outputs=outputs,
        leading_comment=citation,
        path=path,
    )


def _parse_cell(text: str, att: RawAttribute, is_label: bool, path, line_no: int, col: int) -> float:
    if text == "?":
        if is_label:
            raise FormatError(f"label {att.name!r} cannot be missing", path, line_no, col)
        return math.nan
    if is_label:
        if text in ("0", "1"):
            return float(text)
        try:
            value = float(text)
        except ValueError:
            value = math.nan
        if value in (0.0, 1.0):
            return value
        raise FormatError(
            f"label {att.name!r} value {text!r} outside {{0, 1}}", path, line_no, col
        )
    if att.kind == NUMERIC:
        try:
            return float(text)
        except ValueError:
            raise FormatError(
                f"bad numeric value {text!r} for attribute {att.name!r}", path, line_no, col
            ) from None
    try:
        return float(att.categories.index(text))
    except ValueError:
        raise FormatError(
            f"value {text!r} not among categories of {att.name!r}", path, line_no, col
        ) from None


def build_dataset(
    content: ArffContent,
    label_positions: list[int],
    name: str,
    citation: str | None = None,
) -> MLDataset:
    path = content.path
    atts = content.attributes
    total = len(atts)
    label_set = set(label_positions)
    if len(label_set) != len(label_positions):
        raise FormatError("an attribute is designated label twice", path)
    for pos in label_positions:
        if not 0 <= pos < total:
            raise FormatError(f"label position {pos} out of range", path)
    feature_positions = [i for i in range(total) if i not in label_set]
    if not content.data_rows:
        raise FormatError("no data rows after @data", path)

    matrix = np.empty((len(content.data_rows), total), dtype=np.float64)
    for row_idx, (line_no, payload) in enumerate(content.data_rows):
        if payload.startswith("{"):
            closing = payload.rfind("}")
            if closing < 0:
                raise FormatError("unterminated sparse row", path, line_no)
            matrix[row_idx, :] = 0.0  # unstated sparse cells: 0 / first category
            inner = payload[1:closing]
            i = 0
            while i < len(inner):
                while i < len(inner) and inner[i] in " \t,":
                    i += 1
                if i >= len(inner):
                    break
                col_pos = i + 2  # 1-based, counting the opening brace
                j = i
                while j < len(inner) and inner[j] not in " \t":
                    j += 1
                head = inner[i:j]
                try:
                    pos = int(head)
                except ValueError:
                    raise FormatError(
                        f"bad sparse index {head!r}", path, line_no, col_pos
                    ) from None
                if not 0 <= pos < total:
                    raise FormatError(
                        f"sparse index {pos} out of range 0..{total - 1}",
                        path, line_no, col_pos,
                    )
                while j < len(inner) and inner[j] in " \t":
                    j += 1
                if j >= len(inner) or inner[j] == ",":
                    raise FormatError(
                        f"sparse entry {head!r} has no value", path, line_no, col_pos
                    )
                if inner[j] in "'\"":
                    value_text, j = _read_quoted(inner, j, path, line_no)
                    while j < len(inner) and inner[j] in " \t":
                        j += 1
                    if j < len(inner) and inner[j] != ",":
                        raise FormatError(
                            "expected comma after quoted value", path, line_no, j + 2
                        )
                else:
                    comma = inner.find(",", j)
                    comma = len(inner) if comma < 0 else comma
                    value_text = inner[j:comma].strip()
                    j = comma
                matrix[row_idx, pos] = _parse_cell(
                    value_text, atts[pos], pos in label_set, path, line_no, col_pos
                )
                i = j
        else:
            cells = split_values(payload, path, line_no)
            if len(cells) != total:
                raise FormatError(
                    f"row has {len(cells)} values, expected {total}", path, line_no
                )
            for col, (text, col_pos, _) in enumerate(cells):
                matrix[row_idx, col] = _parse_cell(
                    text, atts[col], col in label_set, path, line_no, col_pos
                )

    def meta(pos: int, as_label: bool) -> AttributeMeta:
        att = atts[pos]
        if as_label:
            return AttributeMeta(att.name, LABEL)
        return AttributeMeta(att.name, att.kind, att.categories)

    features = matrix[:, feature_positions]
    labels = matrix[:, label_positions]
    attributes = tuple(
        [meta(p, False) for p in feature_positions] + [meta(p, True) for p in label_positions]
    )
    return MLDataset(
        name=name,
        features=features,
        labels=labels.astype(np.int8),
        attributes=attributes,
        label_names=tuple(atts[p].name for p in label_positions),
        citation=citation if citation is not None else content.leading_comment,
        original_label_positions=tuple(label_positions),
    )


# --- dialect resolution -----------------------------------------------------

_MEKA_C = re.compile(r"-C\s+(-?\d+)")


def meka_label_count(relation: str) -> int | None:
    match = _MEKA_C.search(relation)
    return int(match.group(1)) if match else None


def read_mulan(path, xml_path=None) -> MLDataset:
    content = parse_arff(path)
    xml_path = Path(xml_path) if xml_path else Path(path).with_suffix(".xml")
    if not xml_path.exists():
        raise FormatError(f"missing companion label file {xml_path}", path)
    names = read_labels_xml(xml_path)
    by_name = {att.name: i for i, att in enumerate(content.attributes)}
    positions = []
    for label in names:
        if label not in by_name:
            raise FormatError(f"label {label!r} from {xml_path.name} not in header", path)
        positions.append(by_name[label])
    positions.sort()  # keep file column order
    return build_dataset(content, positions, name=content.relation)


def read_meka(path) -> MLDataset:
    content = parse_arff(path)
    count = meka_label_count(content.relation)
    if count is None:
        raise FormatError("relation name carries no -C label count", path)
    total = len(content.attributes)
    if count == 0 or abs(count) > total:
        raise FormatError(f"-C {count} does not fit {total} attributes", path)
    positions = list(range(count)) if count > 0 else list(range(total + count, total))
    name = content.relation.split(":")[0].strip() or content.relation
    return build_dataset(content, positions, name=name)


def read_keel(path) -> MLDataset:
    content = parse_arff(path)
    if not content.outputs:
        raise FormatError("missing @outputs line naming the labels", path)
    by_name = {att.name: i for i, att in enumerate(content.attributes)}
    positions = []
    for label in content.outputs:
        if label not in by_name:
            raise FormatError(f"@outputs names unknown attribute {label!r}", path)
        positions.append(by_name[label])
    positions.sort()
    return build_dataset(content, positions, name=content.relation)


# --- writing ----------------------------------------------------------------


def _cell_text(ds: MLDataset, row: int, col: int, is_label: bool) -> str:
    if is_label:
        return str(int(ds.labels[row, col - ds.f]))
    value = ds.features[row, col]
    if math.isnan(value):
        return "?"
    att = ds.attributes[col]
    if att.kind == NOMINAL:
        return quote_if_needed(att.categories[int(value)])
    return format_number(value)


def _is_default(ds: MLDataset, row: int, col: int, is_label: bool) -> bool:
    if is_label:
        return ds.labels[row, col - ds.f] == 0
    value = ds.features[row, col]
    return value == 0.0  # NaN must be written explicitly


def _attribute_decl(att: AttributeMeta, ds: MLDataset, col: int, keel_ranges: bool) -> str:
    name = quote_if_needed(att.name)
    if att.kind == LABEL:
        return f"@attribute {name} {{0, 1}}"
    if att.kind == NOMINAL:
        cats = ", ".join(quote_if_needed(c) for c in att.categories)
        return f"@attribute {name} {{{cats}}}"
    if keel_ranges:
        column = ds.features[:, col]
        real = column[~np.isnan(column)]
        if real.size:
            lo, hi = format_number(float(real.min())), format_number(float(real.max()))
            return f"@attribute {name} real [{lo}, {hi}]"
    return f"@attribute {name} numeric"


def write_arff(ds: MLDataset, path, dialect: str, sparse: bool = False) -> None:
    """Emit one ARFF file. dialect: mulan | meka | keel (MEKA puts the label
    block first, the others put it last)."""
    labels_first = dialect == "meka"
    f, k = ds.f, ds.k
    if labels_first:
        columns = [(f + j, True) for j in range(k)] + [(j, False) for j in range(f)]
    else:
        columns = [(j, False) for j in range(f)] + [(f + j, True) for j in range(k)]

    lines: list[str] = []
    if ds.citation:
        lines.extend(f"% {line}" if line else "%" for line in ds.citation.splitlines())
        lines.append("")
    if dialect == "meka":
        relation = _quote(f"{ds.name}: -C {k}")
    else:
        relation = quote_if_needed(ds.name)
    lines.append(f"@relation {relation}")
    lines.append("")
    for col, is_label in columns:
        lines.append(_attribute_decl(ds.attributes[col], ds, col, dialect == "keel"))
    if dialect == "keel":
        lines.append("@inputs " + ", ".join(quote_if_needed(a.name) for a in ds.feature_attributes))
        lines.append("@outputs " + ", ".join(quote_if_needed(n) for n in ds.label_names))
    lines.append("")
    lines.append("@data")
    for row in range(ds.n):
        if sparse:
            entries = [
                f"{pos} {_cell_text(ds, row, col, is_label)}"
                for pos, (col, is_label) in enumerate(columns)
                if not _is_default(ds, row, col, is_label)
            ]
            lines.append("{" + ", ".join(entries) + "}")
        else:
            lines.append(",".join(_cell_text(ds, row, col, is_label) for col, is_label in columns))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_labels_xml(path) -> list[str]:
    try:
        root = ET.parse(path).getroot()
    except ET.ParseError as exc:
        raise FormatError(f"bad label XML ({exc})", path) from exc
    names = []
    for elem in root.iter():
        tag = elem.tag.rsplit("}", 1)[-1]
        if tag == "label" and "name" in elem.attrib:
            names.append(elem.attrib["name"])
    if not names:
        raise FormatError("label XML contains no <label name=.../> entries", path)
    return names


def write_labels_xml(label_names, path) -> None:
    lines = ["<?xml version=\"1.0\" encoding=\"utf-8\"?>"]
    lines.append(f'<labels xmlns="{MULAN_XMLNS}">')
    for name in label_names:
        escaped = (
            name.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;")
        )
        lines.append(f'  <label name="{escaped}"></label>')
    lines.append("</labels>")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
