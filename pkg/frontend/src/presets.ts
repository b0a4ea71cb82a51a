/**
 * Canned scripts: the four classic runs and the three puzzles, replayed
 * verbatim through POST /script.  The texts are frozen here and pinned
 * against captured server fixtures by the test suite.
 */

export const PRESET_NAMES = [
  "exp1",
  "exp2",
  "exp3",
  "exp4",
  "puzzle1",
  "puzzle2",
  "puzzle3",
] as const;

export type PresetName = (typeof PRESET_NAMES)[number];

export interface Preset {
  title: string;
  script: string;
}

export const PRESETS: Record<PresetName, Preset> = {
  exp1: {
    title: "Experiment 1: measure Sz twice",
    script: "beam random\nsplit z\ndrop\nsplit z\n",
  },
  exp2: {
    title: "Experiment 2: Sx after a z+ filter",
    script: "beam random\nfilter z +\nsplit x\n",
  },
  exp3: {
    title: "Experiment 3: z, then x, then z again",
    script: "beam random\nsplit z\ndrop\nsplit x\ndrop\nsplit z\n",
  },
  exp4: {
    title: "Experiment 4: recombine instead of measuring",
    script: "beam random\nsplit z\ndrop\nsplit x\nrecombine x\nsplit z\n",
  },
  puzzle1: {
    title: "Puzzle 1: the filter that unblocks",
    script: "beam random\nfilter z +\nfilter x +\nfilter z -\n",
  },
  puzzle2: {
    title: "Puzzle 2: quarter turn about y",
    script: "beam random\nfilter z +\nbfield y pi/2\nfilter x +\n",
  },
  puzzle3: {
    title: "Puzzle 3: one full turn in one arm",
    script:
      "beam random\nsplit z\ndrop\nsplit x\nbfield x 2*pi\nrecombine x\nsplit z\n",
  },
};
