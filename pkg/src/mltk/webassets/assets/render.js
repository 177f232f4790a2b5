/** DOM construction for the two views. Pure functions of the fetched JSON:
 * callers own fetching and state, these own the markup. */
import { formatValue } from "./catalog.js";
import { archivePath, datasetJsonPath, SCHEMES, STRATEGIES } from "./paths.js";
import { COLUMNS } from "./types.js";
function el(tag, className, text) {
    const node = document.createElement(tag);
    if (className)
        node.className = className;
    if (text !== undefined)
        node.textContent = text;
    return node;
}
export function renderError(message) {
    return el("div", "banner error", message);
}
export function renderEmpty() {
    return el("p", "placeholder", "no datasets");
}
export function renderTable(rows, sort, callbacks) {
    const table = el("table", "catalog");
    const head = table.createTHead().insertRow();
    for (const column of COLUMNS) {
        const th = document.createElement("th");
        th.textContent = column.header;
        th.dataset.key = column.key;
        if (sort && sort.key === column.key) {
            th.classList.add(sort.direction === "asc" ? "sorted-asc" : "sorted-desc");
        }
        th.addEventListener("click", () => callbacks.onSort(column.key));
        head.appendChild(th);
    }
    const body = table.createTBody();
    for (const row of rows) {
        const tr = body.insertRow();
        tr.dataset.name = row.name;
        for (const column of COLUMNS) {
            const td = tr.insertCell();
            td.textContent = formatValue(row[column.key]);
            if (column.numeric)
                td.classList.add("num");
        }
        tr.addEventListener("click", () => callbacks.onOpen(row.name));
    }
    return table;
}
function panel(title) {
    const section = el("section", "panel");
    section.appendChild(el("h2", undefined, title));
    return section;
}
function measuresPanel(record) {
    const section = panel("Measures");
    const list = el("dl");
    const entries = [
        ...Object.entries(record.measures),
        ["sparsity", record.sparsity],
    ];
    for (const [key, value] of entries) {
        list.appendChild(el("dt", undefined, key));
        list.appendChild(el("dd", undefined, value === null ? "-" : String(value)));
    }
    section.appendChild(list);
    return section;
}
function labelsPanel(record) {
    const section = panel("Labels");
    const table = el("table", "labels");
    const head = table.createTHead().insertRow();
    for (const header of ["Label", "Count", "Frequency", "IRLbl", "SCUMBLE"]) {
        head.appendChild(el("th", undefined, header));
    }
    const body = table.createTBody();
    for (const label of record.labels) {
        const tr = body.insertRow();
        tr.insertCell().textContent = label.name;
        tr.insertCell().textContent = String(label.count);
        tr.insertCell().textContent = label.frequency.toFixed(3);
        tr.insertCell().textContent = label.irlbl === null ? "-" : label.irlbl.toFixed(3);
        tr.insertCell().textContent = label.scumble.toFixed(3);
    }
    section.appendChild(table);
    return section;
}
function attributesPanel(record) {
    const section = panel("Attributes");
    const list = el("ul", "attributes");
    for (const attribute of record.attributes) {
        const detail = attribute.categories
            ? `${attribute.kind} {${attribute.categories.join(", ")}}`
            : attribute.kind;
        list.appendChild(el("li", undefined, `${attribute.name}: ${detail}`));
    }
    section.appendChild(list);
    return section;
}
function citationPanel(record) {
    const section = panel("Source");
    if (!record.citation) {
        section.appendChild(el("p", "placeholder", "no citation available"));
        return section;
    }
    const block = el("pre", "bibtex", record.citation);
    const copy = el("button", "copy", "Copy BibTeX");
    copy.addEventListener("click", () => {
        void navigator.clipboard.writeText(record.citation ?? "");
    });
    section.appendChild(block);
    section.appendChild(copy);
    return section;
}
function downloadsPanel(record, formats) {
    const section = panel("Downloads");
    const full = el("p", "full-download");
    const link = el("a", undefined, `full dataset (${record.downloads.full.format})`);
    link.setAttribute("href", record.downloads.full.files[0]);
    full.appendChild(link);
    section.appendChild(full);
    if (!record.downloads.partitions)
        return section;
    const picker = el("div", "picker");
    const selects = {};
    const axes = [
        ["strategy", STRATEGIES],
        ["scheme", SCHEMES],
        ["format", formats],
    ];
    for (const [axis, options] of axes) {
        const select = document.createElement("select");
        select.dataset.axis = axis;
        for (const option of options) {
            const entry = document.createElement("option");
            entry.value = option;
            entry.textContent = option;
            select.appendChild(entry);
        }
        selects[axis] = select;
        picker.appendChild(select);
    }
    const download = el("a", "archive-link", "download archive");
    const update = () => {
        download.setAttribute("href", archivePath(record.name, selects.strategy.value, selects.scheme.value, selects.format.value));
    };
    for (const select of Object.values(selects)) {
        select.addEventListener("change", update);
    }
    update();
    picker.appendChild(download);
    section.appendChild(picker);
    return section;
}
export function renderNotFound(name) {
    const view = el("div", "detail");
    view.appendChild(el("h1", undefined, "dataset not found"));
    view.appendChild(el("p", "placeholder", `no dataset named "${name}" in this repository`));
    return view;
}
export function renderDetail(record, formats) {
    const view = el("div", "detail");
    view.appendChild(el("h1", undefined, record.name));
    view.appendChild(measuresPanel(record));
    view.appendChild(labelsPanel(record));
    view.appendChild(attributesPanel(record));
    view.appendChild(citationPanel(record));
    view.appendChild(downloadsPanel(record, formats));
    const raw = el("p", "raw-json");
    const link = el("a", undefined, "all of this as JSON");
    link.setAttribute("href", datasetJsonPath(record.name));
    raw.appendChild(link);
    view.appendChild(raw);
    return view;
}
