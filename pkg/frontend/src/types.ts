/** Shapes of the JSON documents the repository builder emits. The UI is a
 * pure projection of these: it never recomputes a metric. */

export interface CatalogRow {
  name: string;
  instances: number;
  inputs: number;
  labels: number;
  labelsets: number;
  cardinality: number;
  density: number;
  mean_ir: number | null;
  scumble: number;
  tcs: number;
  sparsity: number;
}

export interface Manifest {
  title: string;
  accent_color: string;
  partition: boolean;
  formats: string[];
  seeds: { single: number; pair: number[] };
  generated_at: string | null;
  datasets: CatalogRow[];
}

export interface LabelRecord {
  name: string;
  count: number;
  frequency: number;
  irlbl: number | null;
  scumble: number;
  scumble_cv: number;
}

export interface AttributeRecord {
  name: string;
  kind: string;
  categories?: string[];
}

export interface PartitionDownload {
  strategy: string;
  scheme: string;
  format: string;
  path: string;
}

export interface DatasetRecord {
  name: string;
  measures: Record<string, number | null>;
  sparsity: number;
  labels: LabelRecord[];
  attributes: AttributeRecord[];
  citation: string | null;
  downloads: {
    full: { format: string; files: string[] };
    partitions?: PartitionDownload[];
  };
}

export interface SortState {
  key: keyof CatalogRow;
  direction: "asc" | "desc";
}

/** Column order of the catalog table; keys index into CatalogRow. */
export const COLUMNS: { key: keyof CatalogRow; header: string; numeric: boolean }[] = [
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
