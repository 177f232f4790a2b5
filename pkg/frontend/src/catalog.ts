/** Sorting, filtering and display formatting for catalog rows. All values
 * come straight from the manifest; the only transformation is text
 * rendering (3 decimal places for non-integer metrics). */

import type { CatalogRow } from "./types.js";

export type SortDirection = "asc" | "desc";

/** Integers render as-is, other finite numbers with 3 decimals, null as a
 * dash (undefined MeanIR on datasets with an empty label). */
export function formatValue(value: CatalogRow[keyof CatalogRow]): string {
  if (value === null) return "-";
  if (typeof value === "string") return value;
  if (Number.isInteger(value)) return String(value);
  return value.toFixed(3);
}

function compareValues(
  a: CatalogRow[keyof CatalogRow],
  b: CatalogRow[keyof CatalogRow],
): number {
  if (a === null && b === null) return 0;
  if (a === null) return -1; // undefined metrics sort before any number
  if (b === null) return 1;
  if (typeof a === "string" || typeof b === "string") {
    return String(a) < String(b) ? -1 : String(a) > String(b) ? 1 : 0;
  }
  return a - b;
}

/** Stable sort by one column; input order breaks ties. */
export function sortRows(
  rows: CatalogRow[],
  key: keyof CatalogRow,
  direction: SortDirection,
): CatalogRow[] {
  const sign = direction === "asc" ? 1 : -1;
  return rows
    .map((row, index) => ({ row, index }))
    .sort((x, y) => sign * compareValues(x.row[key], y.row[key]) || x.index - y.index)
    .map((entry) => entry.row);
}

/** Case-insensitive substring match on the name, or exact-prefix match on
 * any metric's rendered text ("6" finds rows with a metric shown as 6, 6.12,
 * 600...). Empty query keeps everything. */
export function filterRows(rows: CatalogRow[], query: string): CatalogRow[] {
  const needle = query.trim().toLowerCase();
  if (needle === "") return rows;
  return rows.filter((row) => {
    if (row.name.toLowerCase().includes(needle)) return true;
    return (Object.keys(row) as (keyof CatalogRow)[]).some(
      (key) => key !== "name" && formatValue(row[key]).toLowerCase().startsWith(needle),
    );
  });
}
