/**
 * Pure view building: bench state in, printable strings out.
 *
 * Beam arrays keep the server's bottom-to-top order; stacking them
 * visually (plus port on top) is the DOM layer's business, reordering
 * data is not.
 */

import type { BenchState } from "./bench.js";

/** Shown in place of beam lines when the stack is empty. */
export const NO_BEAMS = "no beams";

const DISPLAY_FLOOR = -1e-12;

/**
 * Format an intensity exactly as the server reported it, full
 * precision.  The one display liberty: negative zero and the rounding
 * dust a recombiner can leave behind (magnitude at most 1e-12) print as
 * plain 0.  Anything more negative is shown raw; that would be a bug
 * worth seeing.
 */
export function formatIntensity(value: number): string {
  if (Object.is(value, -0) || (value >= DISPLAY_FLOOR && value <= 0)) {
    return "0";
  }
  return String(value);
}

export interface SegmentView {
  labels: string[];
}

export interface BenchView {
  /** Device labels, left to right. */
  devices: string[];
  /** segments[i] labels the beams right after devices[i], bottom first. */
  segments: SegmentView[];
  /** The final stack's labels, bottom first. */
  labels: string[];
  /** NO_BEAMS when the final stack is empty, else null. */
  message: string | null;
}

export function benchView(state: BenchState): BenchView {
  const count = state.chain.length;
  const segments = state.chain.map((_, index) => {
    const view =
      index < count - 1 ? state.history[index + 1] ?? state.stack : state.stack;
    return { labels: view.beams.map((beam) => formatIntensity(beam.intensity)) };
  });
  const labels = state.stack.beams.map((beam) => formatIntensity(beam.intensity));
  return {
    devices: state.chain.map((link) => link.label),
    segments,
    labels,
    message: labels.length === 0 ? NO_BEAMS : null,
  };
}
