/**
 * DOM wiring for the bench page: palette form, device chain canvas,
 * preset bar, toasts.  Everything rendered comes out of benchView, so
 * this file is elements and event handlers only.
 */

import type { Bench, Toast } from "./bench.js";
import {
  PALETTE,
  angleLabel,
  snapOmega,
  type AxisSetting,
  type DeviceForm,
  type DevicePaletteItem,
} from "./palette.js";
import { PRESET_NAMES, PRESETS } from "./presets.js";
import { NO_BEAMS, benchView } from "./render.js";

const TOAST_MS = 4000;

export interface MountOptions {
  baseUrl: string;
}

export function mountBench(root: HTMLElement, bench: Bench, options: MountOptions): void {
  root.innerHTML = "";

  const bar = el("div", "bar");
  const canvas = el("div", "canvas");
  const toasts = el("div", "toasts");

  bar.append(buildPaletteForm(bench), buildToolbar(bench, options.baseUrl));
  root.append(bar, canvas, toasts);

  bench.onChange(() => renderCanvas(canvas, bench));
  bench.onToast((toast) => showToast(toasts, toast));
  renderCanvas(canvas, bench);
}

function buildPaletteForm(bench: Bench): HTMLElement {
  const form = el("div", "palette");

  const device = el("select");
  for (const item of PALETTE) {
    const option = el("option", undefined, item.title);
    option.value = item.kind;
    option.title = item.hint;
    device.append(option);
  }

  const axis = el("select");
  for (const value of ["x", "y", "z", "custom"]) {
    const option = el("option", undefined, value);
    option.value = value;
    axis.append(option);
  }

  const theta = dial("θ", 0, Math.PI, 0.01, Math.PI / 2);
  const phi = dial("φ", -Math.PI, Math.PI, 0.01, 0);
  const omega = dial("ω", -4 * Math.PI, 4 * Math.PI, Math.PI / 4, Math.PI / 2);
  omega.input.addEventListener("input", () => {
    omega.input.valueAsNumber = snapOmega(omega.input.valueAsNumber);
    omega.readout.textContent = angleLabel(omega.input.valueAsNumber);
  });

  const sign = el("select");
  for (const value of ["+", "-"]) {
    const option = el("option", undefined, value);
    option.value = value;
    sign.append(option);
  }

  const add = el("button", undefined, "Add");
  add.addEventListener("click", () => {
    const item = PALETTE.find((entry) => entry.kind === device.value);
    if (item) {
      void bench.addDevice(item, readForm(item, axis, theta, phi, sign, omega));
    }
  });

  const refresh = () => {
    const item = PALETTE.find((entry) => entry.kind === device.value);
    const custom = axis.value === "custom";
    show(axis, item?.needsAxis ?? false);
    show(theta.wrap, (item?.needsAxis ?? false) && custom);
    show(phi.wrap, (item?.needsAxis ?? false) && custom);
    show(sign, item?.needsSign ?? false);
    show(omega.wrap, item?.needsOmega ?? false);
  };
  device.addEventListener("change", refresh);
  axis.addEventListener("change", refresh);

  form.append(device, axis, theta.wrap, phi.wrap, sign, omega.wrap, add);
  refresh();
  return form;
}

function readForm(
  item: DevicePaletteItem,
  axis: HTMLSelectElement,
  theta: Dial,
  phi: Dial,
  sign: HTMLSelectElement,
  omega: Dial,
): DeviceForm {
  const form: DeviceForm = {};
  if (item.needsAxis) {
    form.axis =
      axis.value === "custom"
        ? ({ theta: theta.input.valueAsNumber, phi: phi.input.valueAsNumber } as AxisSetting)
        : ({ named: axis.value as "x" | "y" | "z" } as AxisSetting);
  }
  if (item.needsSign) {
    form.sign = sign.value as "+" | "-";
  }
  if (item.needsOmega) {
    form.omega = snapOmega(omega.input.valueAsNumber);
  }
  return form;
}

function buildToolbar(bench: Bench, baseUrl: string): HTMLElement {
  const toolbar = el("div", "toolbar");

  const preset = el("select");
  for (const name of PRESET_NAMES) {
    const option = el("option", undefined, PRESETS[name].title);
    option.value = name;
    preset.append(option);
  }
  const load = el("button", undefined, "Load preset");
  load.addEventListener("click", () => {
    void bench.loadPreset(preset.value as (typeof PRESET_NAMES)[number]);
  });

  const undo = el("button", undefined, "Undo");
  undo.addEventListener("click", () => void bench.undoLast());

  const clear = el("button", undefined, "New session");
  clear.addEventListener("click", () => void bench.start());

  const where = el("span", "base-url", baseUrl);

  toolbar.append(preset, load, undo, clear, where);
  return toolbar;
}

function renderCanvas(canvas: HTMLElement, bench: Bench): void {
  const view = benchView(bench.state);
  canvas.innerHTML = "";

  if (view.devices.length === 0) {
    canvas.append(el("div", "empty", NO_BEAMS));
    return;
  }

  const row = el("div", "chain");
  view.devices.forEach((label, index) => {
    row.append(el("div", "device", label));
    const segment = el("div", "segment");
    const labels = view.segments[index]?.labels ?? [];
    for (const text of labels) {
      const beam = el("div", "beam");
      beam.append(el("span", "intensity", text), el("div", "line"));
      segment.append(beam);
    }
    if (labels.length === 0) {
      segment.append(el("div", "no-beams", NO_BEAMS));
    }
    row.append(segment);
  });
  canvas.append(row);
}

function showToast(host: HTMLElement, toast: Toast): void {
  const text = toast.code ? `${toast.message} [${toast.code}]` : toast.message;
  const node = el("div", "toast", text);
  host.append(node);
  setTimeout(() => node.remove(), TOAST_MS);
}

interface Dial {
  wrap: HTMLElement;
  input: HTMLInputElement;
  readout: HTMLElement;
}

function dial(name: string, min: number, max: number, step: number, value: number): Dial {
  const wrap = el("label", "dial");
  const input = el("input");
  input.type = "range";
  input.min = String(min);
  input.max = String(max);
  input.step = String(step);
  input.valueAsNumber = value;
  const readout = el("span", "readout", angleLabel(value));
  input.addEventListener("input", () => {
    readout.textContent = angleLabel(input.valueAsNumber);
  });
  wrap.append(el("span", "dial-name", name), input, readout);
  return { wrap, input, readout };
}

function show(node: HTMLElement, visible: boolean): void {
  node.style.display = visible ? "" : "none";
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className !== undefined) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}
