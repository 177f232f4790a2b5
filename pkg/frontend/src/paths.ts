/** Relative download paths inside a built repository. Kept relative so the
 * site works under any static hosting prefix. */

export const STRATEGIES = ["random", "stratified", "iterative"] as const;
export const SCHEMES = ["holdout", "2x5", "10cv"] as const;

export function archivePath(
  name: string,
  strategy: string,
  scheme: string,
  format: string,
): string {
  return `partitions/${name}/${name}-${strategy}-${scheme}-${format}.tar.gz`;
}

export function datasetJsonPath(name: string): string {
  return `json/${encodeURIComponent(name)}.json`;
}

export const MANIFEST_PATH = "json/index.json";
