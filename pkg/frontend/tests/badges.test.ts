// Badge behaviour against real documents produced by the backend CLI
// (fixtures are verbatim /api/section payloads).

import { describe, expect, it } from "vitest";

import { badgeTag, badgeText } from "../src/badge.js";
import { ExplorerStore, Fetcher } from "../src/state.js";
import { ExplorerParams, SectionDocument } from "../src/types.js";

import villarceau from "./fixtures/villarceau.json";
import cassini from "./fixtures/cassini.json";
import lemniscate from "./fixtures/lemniscate.json";
import hippopede from "./fixtures/hippopede.json";
import central from "./fixtures/central.json";
import horizontal from "./fixtures/horizontal.json";
import sweep0 from "./fixtures/sweep_rho_0.json";
import sweep05 from "./fixtures/sweep_rho_05.json";
import sweep1 from "./fixtures/sweep_rho_1.json";

const docs = {
  villarceau, cassini, lemniscate, hippopede, central, horizontal,
  sweep0, sweep05, sweep1,
} as unknown as Record<string, SectionDocument>;

describe("fixtures are genuine backend documents", () => {
  it("carry schema version 1", () => {
    for (const doc of Object.values(docs)) {
      expect(doc.schema_version).toBe(1);
    }
  });
});

describe("preset badges", () => {
  const expected: Array<[string, string]> = [
    ["villarceau", "Villarceau"],
    ["cassini", "CassiniOval"],
    ["lemniscate", "BernoulliLemniscate"],
    ["hippopede", "HippopedeOfProclus"],
    ["central", "CentralGeneric"],
    ["horizontal", "HorizontalCircles"],
  ];

  it.each(expected)("%s fixture classifies as %s", (name, tag) => {
    expect(badgeTag(docs[name])).toBe(tag);
  });

  it("preset clicks surface the matching badge", async () => {
    // fetcher routes by parameters, mimicking the live service
    const byParams: Array<[Partial<ExplorerParams>, SectionDocument]> = [
      [{ rho: 0, phiDeg: 60 }, docs.villarceau],
      [{ R: 3, rho: 1 }, docs.cassini],
      [{ R: 2, rho: 1 }, docs.lemniscate],
      [{ R: 3, rho: 2 }, docs.hippopede],
    ];
    const fetcher: Fetcher = async (p) => {
      for (const [match, doc] of byParams) {
        if (Object.entries(match).every(
          ([k, v]) => Math.abs((p as never as Record<string, number>)[k] - (v as number)) < 0.51)) {
          return doc;
        }
      }
      return docs.central;
    };
    const store = new ExplorerStore(fetcher);

    store.applyPreset({ R: 2, r: 1, rho: 0, alpha: 0, phi: 60 });
    await new Promise((res) => setTimeout(res));
    expect(badgeText(store.doc!)).toMatch(/^Villarceau \(plane angle 60\.000/);

    store.applyPreset({ R: 3, r: 1, rho: 1, alpha: 0, phi: 0 });
    await new Promise((res) => setTimeout(res));
    expect(badgeTag(store.doc!)).toBe("CassiniOval");

    store.applyPreset({ R: 3, r: 1, rho: 2, alpha: 0, phi: 0 });
    await new Promise((res) => setTimeout(res));
    expect(badgeTag(store.doc!)).toBe("HippopedeOfProclus");
  });

  it("badge strings include the document detail", () => {
    // horizontal fixture: R=2, r=1, rho=0.5 -> radii 2 +- sqrt(0.75)
    expect(badgeText(docs.horizontal)).toBe("HorizontalCircles (radii 2.866, 1.134)");
    expect(badgeText(docs.lemniscate)).toBe("BernoulliLemniscate (b²=4.00, c=2.00)");
  });
});

describe("rho sweep at R = 2r, phi = 0", () => {
  it("walks CentralGeneric -> SpiricGeneric -> BernoulliLemniscate", async () => {
    const byRho = new Map<number, SectionDocument>([
      [0, docs.sweep0],
      [0.5, docs.sweep05],
      [1, docs.sweep1],
    ]);
    const fetcher: Fetcher = async (p) => byRho.get(p.rho)!;
    const store = new ExplorerStore(fetcher);
    const seen: string[] = [];
    store.subscribe(() => {
      const tag = store.doc && badgeTag(store.doc);
      if (tag && seen[seen.length - 1] !== tag) seen.push(tag);
    });
    for (const rho of [0, 0.5, 1]) {
      store.setParam("rho", rho, false);
      await new Promise((res) => setTimeout(res));
    }
    expect(seen).toEqual(["CentralGeneric", "SpiricGeneric", "BernoulliLemniscate"]);
  });

  it("fixture documents really transition at rho = r", () => {
    expect(badgeTag(docs.sweep0)).toBe("CentralGeneric");
    expect(badgeTag(docs.sweep05)).toBe("SpiricGeneric");
    expect(badgeTag(docs.sweep1)).toBe("BernoulliLemniscate");
  });
});
