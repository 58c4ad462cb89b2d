// DOM wiring for the explorer page.

import { fetchPresets, makeSectionFetcher } from "./api.js";
import { badgeText } from "./badge.js";
import { draw2d } from "./render2d.js";
import { draw3d } from "./render3d.js";
import { BridgeSweepAnimator, drawBridgeOverlay } from "./overlay.js";
import { ExplorerStore, PARAM_LIMITS } from "./state.js";
import { ExplorerParams } from "./types.js";

const store = new ExplorerStore(makeSectionFetcher());
const animator = new BridgeSweepAnimator(2);

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

interface SliderSpec {
  key: keyof ExplorerParams;
  label: string;
  min: number;
  max: number;
  step: number;
}

const SLIDERS: SliderSpec[] = [
  { key: "R", label: "R (major radius)", min: PARAM_LIMITS.R.min, max: PARAM_LIMITS.R.max, step: 0.01 },
  { key: "r", label: "r (minor radius)", min: PARAM_LIMITS.r.min, max: PARAM_LIMITS.r.max, step: 0.01 },
  { key: "rho", label: "ρ (plane distance)", min: PARAM_LIMITS.rho.min, max: PARAM_LIMITS.rho.max, step: 0.01 },
  { key: "alphaDeg", label: "α (azimuth °)", min: 0, max: 360, step: 1 },
  { key: "phiDeg", label: "φ (elevation °)", min: -90, max: 90, step: 0.5 },
];

function buildSliders(): void {
  const host = $("sliders");
  for (const spec of SLIDERS) {
    const row = document.createElement("label");
    row.className = "slider-row";
    const title = document.createElement("span");
    title.textContent = spec.label;
    const input = document.createElement("input");
    input.type = "range";
    input.min = String(spec.min);
    input.max = String(spec.max);
    input.step = String(spec.step);
    input.id = `slider-${spec.key}`;
    const value = document.createElement("output");
    value.id = `value-${spec.key}`;
    input.addEventListener("input", () => {
      store.setParam(spec.key, Number(input.value), true);
    });
    input.addEventListener("change", () => {
      store.setParam(spec.key, Number(input.value), false);
    });
    row.append(title, input, value);
    host.append(row);
  }
}

function syncSliders(): void {
  for (const spec of SLIDERS) {
    const input = $(`slider-${spec.key}`) as HTMLInputElement;
    const value = $(`value-${spec.key}`) as HTMLOutputElement;
    if (spec.key === "r") input.max = String(store.params.R);
    if (document.activeElement !== input) {
      input.value = String(store.params[spec.key]);
    }
    value.textContent = store.params[spec.key].toFixed(2);
  }
}

async function buildPresets(): Promise<void> {
  const host = $("presets");
  try {
    const presets = await fetchPresets();
    for (const preset of presets) {
      const button = document.createElement("button");
      button.textContent = preset.name;
      button.title = preset.description;
      button.addEventListener("click", () => store.applyPreset(preset.params));
      host.append(button);
    }
  } catch {
    host.textContent = "presets unavailable";
  }
}

function renderQuartic(): void {
  const doc = store.doc;
  if (!doc) return;
  const fmt = (v: number) => v.toPrecision(6);
  $("quartic").textContent =
    `(t²+w²)² + a·t² + b·w² + c·w + d = 0   ` +
    `a=${fmt(doc.quartic.a)}  b=${fmt(doc.quartic.b)}  ` +
    `c=${fmt(doc.quartic.c)}  d=${fmt(doc.quartic.d)}`;
}

function render(): void {
  syncSliders();
  const doc = store.doc;
  $("error").textContent = store.error ?? "";
  if (!doc) return;
  $("badge").textContent = badgeText(doc);
  renderQuartic();

  const flat = $("view2d") as unknown as HTMLCanvasElement;
  const ctx2 = flat.getContext("2d");
  if (ctx2) {
    draw2d(ctx2, doc, flat.width, flat.height);
    if (store.view.showBridge) {
      drawBridgeOverlay(ctx2, doc, animator, flat.width, flat.height);
    }
  }
  const scene = $("view3d") as unknown as HTMLCanvasElement;
  scene.style.display = store.view.show3d ? "block" : "none";
  if (store.view.show3d) {
    const ctx3 = scene.getContext("2d");
    if (ctx3) draw3d(ctx3, doc, scene.width, scene.height, yaw);
  }
  const bridgeToggle = $("toggle-bridge") as HTMLInputElement;
  bridgeToggle.disabled = doc.bridge === null;
  bridgeToggle.title = doc.bridge === null
    ? "construction undefined for horizontal planes"
    : "show the cone-cylinder construction sweep";
}

let yaw = 0.7;

function animate(): void {
  const doc = store.doc;
  if (doc) {
    if (store.view.show3d) {
      yaw += 0.004;
      render();
    } else if (store.view.showBridge && doc.bridge && animator.isRunning) {
      render();
    }
    if (doc.bridge) animator.tick(doc.bridge.sweep.length);
  }
  requestAnimationFrame(animate);
}

function wireToggles(): void {
  ($("toggle-bridge") as HTMLInputElement).addEventListener("change", (e) => {
    store.view.showBridge = (e.target as HTMLInputElement).checked;
    animator.reset();
    animator.start();
    render();
  });
  ($("toggle-3d") as HTMLInputElement).addEventListener("change", (e) => {
    store.view.show3d = (e.target as HTMLInputElement).checked;
    render();
  });
  $("pause-sweep").addEventListener("click", () => animator.toggle());
}

buildSliders();
wireToggles();
store.subscribe(render);
void buildPresets();
store.refresh();
animate();
