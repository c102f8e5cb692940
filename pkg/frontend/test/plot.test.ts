import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { parseCsv } from "../src/csv.js";
import {
  curveSeries,
  renderCurves,
  renderSpectraBars,
  spectraBars,
} from "../src/plot.js";

const sweep = parseCsv(
  readFileSync(new URL("../data/sample_urllc_sc.csv", import.meta.url), "utf-8")
);
const spectra = parseCsv(
  readFileSync(new URL("../data/sample_spectra.csv", import.meta.url), "utf-8")
);

describe("curveSeries", () => {
  it("builds one series per pattern, sorted by Eb/N0", () => {
    const series = curveSeries(sweep, ["pattern"], "ber");
    expect(series).toHaveLength(3);
    for (const s of series) {
      const xs = s.points.map((p) => p.ebn0);
      expect(xs).toEqual([...xs].sort((a, b) => a - b));
      expect(s.points).toHaveLength(4);
    }
  });

  it("drops zero values (log axis)", () => {
    const rows = parseCsv("pattern,ebn0_db,ber\npd,1.0,0.0\npd,2.0,0.5\n");
    const series = curveSeries(rows, ["pattern"], "ber");
    expect(series[0].points).toEqual([{ ebn0: 2.0, value: 0.5 }]);
  });
});

describe("renderCurves", () => {
  it("draws one path and one legend entry per series", () => {
    const svg = renderCurves({ rows: sweep, groupKeys: ["pattern"], y: "ber", title: "t" });
    expect(svg.match(/<path /g)).toHaveLength(3);
    expect(svg).toContain("pattern=pd");
    expect(svg).toContain("pattern=rqup");
    expect(svg).toContain("pattern=cw");
  });

  it("uses a log-scale y axis with decade labels", () => {
    const svg = renderCurves({ rows: sweep, groupKeys: ["pattern"], y: "ber", title: "t" });
    expect(svg).toContain(">1e0<");
    expect(svg).toContain(">1e-1<");
    expect(svg).toContain("BER (log scale)");
  });

  it("renders empty axes for header-only input", () => {
    const svg = renderCurves({ rows: [], groupKeys: ["pattern"], y: "fer", title: "empty" });
    expect(svg).toContain("<svg");
    expect(svg).not.toContain("<path");
    expect(svg).toContain("FER (log scale)");
  });

  it("is byte-stable", () => {
    const a = renderCurves({ rows: sweep, groupKeys: ["pattern"], y: "fer", title: "t" });
    const b = renderCurves({ rows: sweep, groupKeys: ["pattern"], y: "fer", title: "t" });
    expect(a).toBe(b);
  });

  it("series count equals distinct grouping tuples over merged input", () => {
    const merged = [...sweep, ...sweep];
    const svg = renderCurves({ rows: merged, groupKeys: ["pattern", "decoder"], y: "ber", title: "t" });
    const distinct = new Set(merged.map((r) => `${r.pattern}|${r.decoder}`));
    expect(svg.match(/<path /g)).toHaveLength(distinct.size);
  });
});

describe("spectraBars", () => {
  it("bar heights equal the CSV sdc values exactly", () => {
    const bars = spectraBars(spectra, "sdc_n");
    expect(bars.map((b) => b.value)).toEqual(
      spectra.map((r) => Number(r.sdc_n))
    );
  });

  it("names a missing value column", () => {
    expect(() => spectraBars(spectra, "nonsense")).toThrow(/nonsense/);
  });
});

describe("renderSpectraBars", () => {
  it("draws one bar per pattern with its value printed", () => {
    const svg = renderSpectraBars({ rows: spectra, value: "sdc_n", title: "t" });
    expect(svg.match(/<rect x=/g)).toHaveLength(3);
    for (const row of spectra) {
      expect(svg).toContain(`>${Number(row.sdc_n)}<`);
    }
  });

  it("renders empty axes for no rows", () => {
    const svg = renderSpectraBars({ rows: [], value: "sdc_n", title: "t" });
    expect(svg).toContain("<svg");
    expect(svg).not.toContain("<rect x=");
  });

  it("is byte-stable", () => {
    const a = renderSpectraBars({ rows: spectra, value: "sdc_nprime", title: "t" });
    const b = renderSpectraBars({ rows: spectra, value: "sdc_nprime", title: "t" });
    expect(a).toBe(b);
  });
});
