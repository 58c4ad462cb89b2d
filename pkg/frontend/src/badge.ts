// Classification badge text derived from the document (never computed
// client side).

import { SectionDocument } from "./types.js";

const num = (v: unknown, digits = 3): string =>
  typeof v === "number" ? v.toFixed(digits) : String(v);

export function badgeText(doc: SectionDocument): string {
  const { tag, detail } = doc.classification;
  switch (tag) {
    case "Villarceau":
      return `Villarceau (plane angle ${num(detail["angle_deg"])}°)`;
    case "HorizontalCircles": {
      const radii = (detail["radii"] as number[] | undefined) ?? [];
      return radii.length
        ? `HorizontalCircles (radii ${radii.map((r) => num(r)).join(", ")})`
        : "HorizontalCircles";
    }
    case "CassiniOval":
    case "BernoulliLemniscate":
      return `${tag} (b²=${num(detail["b_squared"], 2)}, c=${num(detail["c"], 2)})`;
    case "HippopedeOfProclus":
      return `HippopedeOfProclus (ρ = R − r)`;
    default:
      return tag;
  }
}

export function badgeTag(doc: SectionDocument): string {
  return doc.classification.tag;
}
