import { describe, expect, it } from "vitest";
import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { main } from "../src/cli.js";

const sampleSweep = new URL("../data/sample_urllc_sc.csv", import.meta.url).pathname;
const sampleSpectra = new URL("../data/sample_spectra.csv", import.meta.url).pathname;

function tmp(): string {
  return mkdtempSync(join(tmpdir(), "plotkit-"));
}

describe("cli", () => {
  it("emits byte-stable SVG and PNG for curves", () => {
    const dir = tmp();
    main(["curves", "--csv", sampleSweep, "--out", join(dir, "a")]);
    main(["curves", "--csv", sampleSweep, "--out", join(dir, "b")]);
    const svgA = readFileSync(join(dir, "a.svg"));
    const svgB = readFileSync(join(dir, "b.svg"));
    const pngA = readFileSync(join(dir, "a.png"));
    const pngB = readFileSync(join(dir, "b.png"));
    expect(svgA.equals(svgB)).toBe(true);
    expect(pngA.equals(pngB)).toBe(true);
    // PNG magic bytes
    expect([...pngA.subarray(0, 4)]).toEqual([0x89, 0x50, 0x4e, 0x47]);
    expect(svgA.toString()).toContain("pattern=pd");
  });

  it("emits spectra bars", () => {
    const dir = tmp();
    main(["spectra", "--csv", sampleSpectra, "--out", join(dir, "s")]);
    const svg = readFileSync(join(dir, "s.svg"), "utf-8");
    expect(svg.match(/<rect x=/g)).toHaveLength(3);
    expect(readFileSync(join(dir, "s.png")).length).toBeGreaterThan(1000);
  });

  it("accepts fer and custom grouping", () => {
    const dir = tmp();
    main([
      "curves", "--csv", sampleSweep, "--csv", sampleSweep,
      "--group-by", "pattern,decoder", "--y", "fer",
      "--out", join(dir, "f"),
    ]);
    const svg = readFileSync(join(dir, "f.svg"), "utf-8");
    expect(svg).toContain("FER (log scale)");
    expect(svg.match(/<path /g)).toHaveLength(3);
  });

  it("handles a header-only CSV with exit 0", () => {
    const dir = tmp();
    const empty = join(dir, "empty.csv");
    writeFileSync(
      empty,
      "scenario,pattern,decoder,list_size,crc,ebn0_db,frames,bit_errors,frame_errors,ber,fer,seed\n"
    );
    expect(main(["curves", "--csv", empty, "--out", join(dir, "e")])).toBe(0);
    expect(readFileSync(join(dir, "e.svg"), "utf-8")).toContain("<svg");
  });

  it("fails with the missing column named", () => {
    const dir = tmp();
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "pattern,ber\npd,0.1\n");
    expect(() => main(["curves", "--csv", bad, "--out", join(dir, "x")]))
      .toThrow(/scenario/);
  });

  it("exits 2 on usage errors when run as a binary", () => {
    const cli = new URL("../dist/cli.js", import.meta.url).pathname;
    let code = 0;
    try {
      execFileSync("node", [cli, "nonsense"], { stdio: "pipe" });
    } catch (err: any) {
      code = err.status;
    }
    expect(code).toBe(2);
  });
});
