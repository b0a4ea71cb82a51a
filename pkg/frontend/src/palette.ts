/**
 * The device palette: what can be dropped onto the bench, and how each
 * device's parameter form turns into a wire command.
 *
 * The form logic is deliberately strict.  A command leaves this module
 * only if it would also satisfy the server's own validation, so the
 * palette never submits nonsense.
 */

import type { Axis, CommandBody, CommandKind, Sign } from "./api.js";

/** A measurement direction: one of the named axes, or explicit angles. */
export type AxisSetting = { named: Axis } | { theta: number; phi: number };

export interface DeviceForm {
  axis?: AxisSetting;
  sign?: Sign;
  omega?: number;
}

export interface DevicePaletteItem {
  kind: CommandKind;
  title: string;
  hint: string;
  needsAxis: boolean;
  needsSign: boolean;
  needsOmega: boolean;
}

export const PALETTE: readonly DevicePaletteItem[] = [
  {
    kind: "source",
    title: "Source",
    hint: "oven: pushes an unpolarized beam of intensity 1",
    needsAxis: false,
    needsSign: false,
    needsOmega: false,
  },
  {
    kind: "split",
    title: "Splitter",
    hint: "separates the top beam into plus and minus components",
    needsAxis: true,
    needsSign: false,
    needsOmega: false,
  },
  {
    kind: "filter",
    title: "Filter",
    hint: "splitter that keeps only the chosen port",
    needsAxis: true,
    needsSign: true,
    needsOmega: false,
  },
  {
    kind: "recombine",
    title: "Recombiner",
    hint: "coherently merges the top two beams",
    needsAxis: true,
    needsSign: false,
    needsOmega: false,
  },
  {
    kind: "bfield",
    title: "Field coil",
    hint: "precesses the top beam by omega about the axis",
    needsAxis: true,
    needsSign: false,
    needsOmega: true,
  },
  {
    kind: "drop",
    title: "Block",
    hint: "absorbs the top beam",
    needsAxis: false,
    needsSign: false,
    needsOmega: false,
  },
  {
    kind: "flip",
    title: "Swap",
    hint: "exchanges the top two beam paths",
    needsAxis: false,
    needsSign: false,
    needsOmega: false,
  },
];

/** A parameter form that cannot become a valid command. */
export class FormError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "FormError";
  }
}

/**
 * Assemble the wire command for a palette item, or throw FormError.
 * Extra parameters are rejected just like missing ones: the result
 * always carries exactly the fields its kind allows.
 */
export function buildCommand(item: DevicePaletteItem, form: DeviceForm = {}): CommandBody {
  const command: CommandBody = { kind: item.kind };
  if (item.needsAxis) {
    const axis = form.axis;
    if (!axis) {
      throw new FormError(`${item.title} needs an axis`);
    }
    if ("named" in axis) {
      command.axis = axis.named;
    } else {
      requireFinite(axis.theta, "theta");
      requireFinite(axis.phi, "phi");
      command.theta = axis.theta;
      command.phi = axis.phi;
    }
  } else if (form.axis !== undefined) {
    throw new FormError(`${item.title} takes no axis`);
  }
  if (item.needsSign) {
    if (form.sign !== "+" && form.sign !== "-") {
      throw new FormError(`${item.title} needs a sign, + or -`);
    }
    command.sign = form.sign;
  } else if (form.sign !== undefined) {
    throw new FormError(`${item.title} takes no sign`);
  }
  if (item.needsOmega) {
    requireFinite(form.omega, "omega");
    command.omega = form.omega;
  } else if (form.omega !== undefined) {
    throw new FormError(`${item.title} takes no turn angle`);
  }
  return command;
}

function requireFinite(value: number | undefined, name: string): asserts value is number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new FormError(`${name} must be a finite number`);
  }
}

/** The omega dial detent: interesting physics lives at multiples of pi/4. */
export const OMEGA_STEP = Math.PI / 4;

export function snapOmega(value: number): number {
  return Math.round(value / OMEGA_STEP) * OMEGA_STEP;
}

/**
 * Dial readout: render an angle that sits on a pi/4 detent as a fraction
 * of pi ("3π/4", "2π"), anything else to three decimals.
 */
export function angleLabel(value: number): string {
  const quarters = Math.round(value / OMEGA_STEP);
  if (Math.abs(value - quarters * OMEGA_STEP) > 1e-9) {
    return value.toFixed(3);
  }
  if (quarters === 0) {
    return "0";
  }
  const sign = quarters < 0 ? "-" : "";
  let numerator = Math.abs(quarters);
  let denominator = 4;
  while (numerator % 2 === 0 && denominator % 2 === 0) {
    numerator /= 2;
    denominator /= 2;
  }
  const pi = numerator === 1 ? "π" : `${numerator}π`;
  return denominator === 1 ? `${sign}${pi}` : `${sign}${pi}/${denominator}`;
}

/** Chain label for a locally composed command, in script spelling. */
export function commandLabel(command: CommandBody): string {
  if (command.kind === "source") {
    return "beam random";
  }
  const parts: string[] = [command.kind];
  if (command.axis !== undefined) {
    parts.push(command.axis);
  } else if (command.theta !== undefined && command.phi !== undefined) {
    parts.push(`(${command.theta}, ${command.phi})`);
  }
  if (command.sign !== undefined) {
    parts.push(command.sign);
  }
  if (command.omega !== undefined) {
    parts.push(angleLabel(command.omega));
  }
  return parts.join(" ");
}
