/** Shapes of the JSON documents the repository builder emits. The UI is a
 * pure projection of these: it never recomputes a metric. */
/** Column order of the catalog table; keys index into CatalogRow. */
export const COLUMNS = [
    { key: "name", header: "Name", numeric: false },
    { key: "instances", header: "Instances", numeric: true },
    { key: "inputs", header: "Inputs", numeric: true },
    { key: "labels", header: "Labels", numeric: true },
    { key: "labelsets", header: "Labelsets", numeric: true },
    { key: "cardinality", header: "Card", numeric: true },
    { key: "density", header: "Dens", numeric: true },
    { key: "mean_ir", header: "MeanIR", numeric: true },
    { key: "scumble", header: "SCUMBLE", numeric: true },
    { key: "tcs", header: "TCS", numeric: true },
    { key: "sparsity", header: "Sparsity", numeric: true },
];
