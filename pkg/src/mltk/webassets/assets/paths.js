/** Relative download paths inside a built repository. Kept relative so the
 * site works under any static hosting prefix. */
export const STRATEGIES = ["random", "stratified", "iterative"];
export const SCHEMES = ["holdout", "2x5", "10cv"];
export function archivePath(name, strategy, scheme, format) {
    return `partitions/${name}/${name}-${strategy}-${scheme}-${format}.tar.gz`;
}
export function datasetJsonPath(name) {
    return `json/${encodeURIComponent(name)}.json`;
}
export const MANIFEST_PATH = "json/index.json";
