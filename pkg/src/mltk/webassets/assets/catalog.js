/** Sorting, filtering and display formatting for catalog rows. All values
 * come straight from the manifest; the only transformation is text
 * rendering (3 decimal places for non-integer metrics). */
/** Integers render as-is, other finite numbers with 3 decimals, null as a
 * dash (undefined MeanIR on datasets with an empty label). */
export function formatValue(value) {
    if (value === null)
        return "-";
    if (typeof value === "string")
        return value;
    if (Number.isInteger(value))
        return String(value);
    return value.toFixed(3);
}
function compareValues(a, b) {
    if (a === null && b === null)
        return 0;
    if (a === null)
        return -1; // undefined metrics sort before any number
    if (b === null)
        return 1;
    if (typeof a === "string" || typeof b === "string") {
        return String(a) < String(b) ? -1 : String(a) > String(b) ? 1 : 0;
    }
    return a - b;
}
/** Stable sort by one column; input order breaks ties. */
export function sortRows(rows, key, direction) {
    const sign = direction === "asc" ? 1 : -1;
    return rows
        .map((row, index) => ({ row, index }))
        .sort((x, y) => sign * compareValues(x.row[key], y.row[key]) || x.index - y.index)
        .map((entry) => entry.row);
}
/** Case-insensitive substring match on the name, or exact-prefix match on
 * any metric's rendered text ("6" finds rows with a metric shown as 6, 6.12,
 * 600...). Empty query keeps everything. */
export function filterRows(rows, query) {
    const needle = query.trim().toLowerCase();
    if (needle === "")
        return rows;
    return rows.filter((row) => {
        if (row.name.toLowerCase().includes(needle))
            return true;
        return Object.keys(row).some((key) => key !== "name" && formatValue(row[key]).toLowerCase().startsWith(needle));
    });
}
