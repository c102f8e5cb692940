/**
 * Readers for the two polarforge CSV schemas.
 *
 * Sweep CSV header:
 *   scenario,pattern,decoder,list_size,crc,ebn0_db,frames,
 *   bit_errors,frame_errors,ber,fer,seed
 * Spectra CSV header:
 *   pattern_name,n,n_prime,sdp_n,sdc_n,sdp_nprime,sdc_nprime,coeffs
 *
 * Extra columns are ignored so newer producers keep working; missing
 * required columns raise with the column named.
 */

export type Row = Record<string, string>;

export const SWEEP_COLUMNS = [
  "scenario",
  "pattern",
  "decoder",
  "list_size",
  "crc",
  "ebn0_db",
  "frames",
  "bit_errors",
  "frame_errors",
  "ber",
  "fer",
  "seed",
] as const;

export const SPECTRA_COLUMNS = [
  "pattern_name",
  "n",
  "n_prime",
  "sdp_n",
  "sdc_n",
  "sdp_nprime",
  "sdc_nprime",
  "coeffs",
] as const;

/** Parse CSV text into header-keyed rows (no quoting in these schemas). */
export function parseCsv(text: string): Row[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim() !== "");
  if (lines.length === 0) return [];
  const header = lines[0].split(",").map((h) => h.trim());
  return lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length < header.length) {
      throw new Error(`row ${i + 2}: expected ${header.length} cells, got ${cells.length}`);
    }
    const row: Row = {};
    header.forEach((name, j) => {
      row[name] = cells[j].trim();
    });
    return row;
  });
}

export function requireColumns(rows: Row[], required: readonly string[]): void {
  if (rows.length === 0) return;
  for (const col of required) {
    if (!(col in rows[0])) {
      throw new Error(`missing required column: ${col}`);
    }
  }
}

/** Concatenate rows from several CSV files, validating each header. */
export function readRows(
  texts: string[],
  required: readonly string[]
): Row[] {
  const out: Row[] = [];
  for (const text of texts) {
    const rows = parseCsv(text);
    requireColumns(rows, required);
    out.push(...rows);
  }
  return out;
}

/** Stable grouping: key order follows first appearance in the input. */
export function groupBy(rows: Row[], keys: string[]): Map<string, Row[]> {
  if (rows.length > 0) {
    for (const key of keys) {
      if (!(key in rows[0])) throw new Error(`missing required column: ${key}`);
    }
  }
  const groups = new Map<string, Row[]>();
  for (const row of rows) {
    const label = keys.map((k) => `${k}=${row[k]}`).join(" ");
    const bucket = groups.get(label);
    if (bucket) bucket.push(row);
    else groups.set(label, [row]);
  }
  return groups;
}
