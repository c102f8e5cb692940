#!/usr/bin/env node
/**
 * plotkit — render polarforge CSV files as SVG + PNG figures.
 *
 * Usage:
 *   plotkit curves  --csv sweep.csv [--csv more.csv] [--group-by pattern]
 *                   [--y ber|fer] [--title "..."] --out figure
 *   plotkit spectra --csv spectra.csv [--value sdc_n] [--title "..."] --out figure
 *
 * Writes <out>.svg and <out>.png. Output is byte-stable for fixed input.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { Resvg } from "@resvg/resvg-js";
import { readRows, SPECTRA_COLUMNS, SWEEP_COLUMNS } from "./csv.js";
import { renderCurves, renderSpectraBars } from "./plot.js";

function usage(): never {
  process.stderr.write(
    "usage: plotkit <curves|spectra> --csv FILE [--csv FILE...] --out BASE\n" +
      "  curves options: --group-by KEYS (comma list, default pattern), --y ber|fer\n" +
      "  spectra options: --value COLUMN (default sdc_n)\n" +
      "  common: --title TEXT\n"
  );
  process.exit(2);
}

function emit(base: string, svg: string): void {
  writeFileSync(`${base}.svg`, svg);
  const png = new Resvg(svg, {
    fitTo: { mode: "width", value: 1520 },
  })
    .render()
    .asPng();
  writeFileSync(`${base}.png`, png);
}

export function main(argv: string[]): number {
  const command = argv[0];
  if (command !== "curves" && command !== "spectra") usage();
  const { values } = parseArgs({
    args: argv.slice(1),
    options: {
      csv: { type: "string", multiple: true },
      out: { type: "string" },
      "group-by": { type: "string" },
      y: { type: "string" },
      value: { type: "string" },
      title: { type: "string" },
    },
  });
  if (!values.csv || values.csv.length === 0 || !values.out) usage();

  const texts = values.csv.map((p) => readFileSync(p, "utf-8"));

  if (command === "curves") {
    const y = values.y ?? "ber";
    if (y !== "ber" && y !== "fer") usage();
    const groupKeys = (values["group-by"] ?? "pattern").split(",").map((s) => s.trim());
    const rows = readRows(texts, SWEEP_COLUMNS);
    const svg = renderCurves({
      rows,
      groupKeys,
      y,
      title: values.title ?? `${y.toUpperCase()} vs Eb/N0`,
    });
    emit(values.out, svg);
  } else {
    const column = values.value ?? "sdc_n";
    const rows = readRows(texts, SPECTRA_COLUMNS);
    const svg = renderSpectraBars({
      rows,
      value: column,
      title: values.title ?? `Spectrum distance (${column})`,
    });
    emit(values.out, svg);
  }
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;

if (invokedDirectly) {
  try {
    process.exit(main(process.argv.slice(2)));
  } catch (err) {
    process.stderr.write(`error: ${err instanceof Error ? err.message : String(err)}\n`);
    process.exit(1);
  }
}
