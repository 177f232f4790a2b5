/** Entry point: fetches the manifest once, keeps the sort/filter state, and
 * routes between the table and detail views with the location hash
 * (#/d/<name>), so everything works from static hosting at any prefix. */
import { filterRows, sortRows } from "./catalog.js";
import { datasetJsonPath, MANIFEST_PATH } from "./paths.js";
import { renderDetail, renderEmpty, renderError, renderNotFound, renderTable, } from "./render.js";
async function fetchJson(path) {
    const response = await fetch(path);
    if (!response.ok)
        throw new Error(`failed to load ${path}: HTTP ${response.status}`);
    return (await response.json());
}
function currentDetailName() {
    const match = /^#\/d\/(.+)$/.exec(location.hash);
    return match ? decodeURIComponent(match[1]) : null;
}
function visibleRows(state) {
    let rows = filterRows(state.manifest.datasets, state.query);
    if (state.sort)
        rows = sortRows(rows, state.sort.key, state.sort.direction);
    return rows;
}
function renderCatalogView(root, state) {
    root.replaceChildren();
    const search = document.createElement("input");
    search.type = "search";
    search.placeholder = "filter by name or metric value";
    search.value = state.query;
    search.addEventListener("input", () => {
        state.query = search.value;
        refreshTable(root, state);
    });
    root.appendChild(search);
    const holder = document.createElement("div");
    holder.className = "table-holder";
    root.appendChild(holder);
    refreshTable(root, state);
}
function refreshTable(root, state) {
    const holder = root.querySelector(".table-holder");
    if (!holder)
        return;
    const rows = visibleRows(state);
    holder.replaceChildren(rows.length === 0
        ? renderEmpty()
        : renderTable(rows, state.sort, {
            onSort: (key) => {
                state.sort =
                    state.sort && state.sort.key === key && state.sort.direction === "asc"
                        ? { key, direction: "desc" }
                        : { key, direction: "asc" };
                refreshTable(root, state);
            },
            onOpen: (name) => {
                location.hash = `#/d/${encodeURIComponent(name)}`;
            },
        }));
}
async function renderDetailView(root, state, name) {
    const known = state.manifest.datasets.some((row) => row.name === name);
    if (!known) {
        root.replaceChildren(renderNotFound(name));
        return;
    }
    let record = state.records.get(name);
    if (!record) {
        record = await fetchJson(datasetJsonPath(name));
        state.records.set(name, record);
    }
    const view = renderDetail(record, state.manifest.formats);
    const back = document.createElement("a");
    back.href = "#";
    back.className = "back";
    back.textContent = "back to the catalog";
    view.prepend(back);
    root.replaceChildren(view);
}
export async function start(root) {
    let state;
    try {
        const manifest = await fetchJson(MANIFEST_PATH);
        state = { manifest, query: "", sort: null, records: new Map() };
    }
    catch (error) {
        root.replaceChildren(renderError(String(error)));
        return;
    }
    document.title = state.manifest.title;
    document.documentElement.style.setProperty("--accent", state.manifest.accent_color);
    const heading = document.querySelector("header h1");
    if (heading)
        heading.textContent = state.manifest.title;
    const route = async () => {
        const name = currentDetailName();
        if (name === null) {
            renderCatalogView(root, state);
        }
        else {
            try {
                await renderDetailView(root, state, name);
            }
            catch (error) {
                root.replaceChildren(renderError(String(error)));
            }
        }
    };
    window.addEventListener("hashchange", () => void route());
    await route();
}
const mount = typeof document === "undefined" ? null : document.getElementById("app");
if (mount)
    void start(mount);
