/**
 * Bench state machine.
 *
 * Owns the session id, the ordered device chain, and the trail of
 * server-confirmed stack views.  Every intensity the bench ever shows
 * was read out of a server response; no physics happens on the client.
 *
 * All operations go through a single promise queue, so a session never
 * has more than one request in flight.  Failures never reject the
 * returned promise: they surface as toasts carrying the server's error
 * code, and the state stays at the last confirmed view.
 */

import {
  ApiClient,
  ApiError,
  type CommandBody,
  type StackView,
} from "./api.js";
import {
  buildCommand,
  commandLabel,
  type DeviceForm,
  type DevicePaletteItem,
} from "./palette.js";
import { PRESETS, type PresetName } from "./presets.js";

/** One device in the chain; command is null for script-replayed steps. */
export interface DeviceLink {
  label: string;
  command: CommandBody | null;
}

export interface BenchState {
  sessionId: string | null;
  chain: DeviceLink[];
  /** Confirmed views that preceded the current one, oldest first. */
  history: StackView[];
  /** The latest server response; the display renders exactly this. */
  stack: StackView;
  busy: boolean;
}

export interface Toast {
  message: string;
  code?: string;
}

const EMPTY: StackView = { beams: [] };

export class Bench {
  private readonly client: ApiClient;
  private sessionId: string | null = null;
  private chain: DeviceLink[] = [];
  private history: StackView[] = [];
  private stack: StackView = EMPTY;
  private pending = 0;
  private tail: Promise<void> = Promise.resolve();
  private readonly changeListeners = new Set<() => void>();
  private readonly toastListeners = new Set<(toast: Toast) => void>();

  constructor(client: ApiClient) {
    this.client = client;
  }

  get state(): BenchState {
    return {
      sessionId: this.sessionId,
      chain: [...this.chain],
      history: [...this.history],
      stack: this.stack,
      busy: this.pending > 0,
    };
  }

  onChange(listener: () => void): () => void {
    this.changeListeners.add(listener);
    return () => this.changeListeners.delete(listener);
  }

  onToast(listener: (toast: Toast) => void): () => void {
    this.toastListeners.add(listener);
    return () => this.toastListeners.delete(listener);
  }

  /** Open a fresh session and fetch its (empty) stack. */
  start(): Promise<void> {
    return this.enqueue(async () => {
      const sessionId = await this.client.createSession();
      const view = await this.client.getStack(sessionId);
      this.sessionId = sessionId;
      this.chain = [];
      this.history = [];
      this.stack = view;
    });
  }

  /** Validate the form, send the command, append to the chain. */
  addDevice(item: DevicePaletteItem, form: DeviceForm = {}): Promise<void> {
    return this.enqueue(async () => {
      const command = buildCommand(item, form);
      const view = await this.client.applyCommand(this.requireSession(), command);
      this.history.push(this.stack);
      this.chain.push({ label: commandLabel(command), command });
      this.stack = view;
    });
  }

  /**
   * Revert the last device.  The display takes whatever the server
   * answers, which the tests pin to the previous confirmed view.
   */
  undoLast(): Promise<void> {
    return this.enqueue(async () => {
      const view = await this.client.undo(this.requireSession());
      this.history.pop();
      this.chain.pop();
      this.stack = view;
    });
  }

  /** Replace the whole bench with a canned script's replay. */
  loadPreset(name: PresetName): Promise<void> {
    return this.enqueue(async () => {
      const report = await this.client.runScript(
        this.requireSession(),
        PRESETS[name].script,
      );
      const views = report.steps.map((step) => ({ beams: step.beams }));
      this.chain = report.steps.map((step) => ({
        label: step.command,
        command: null,
      }));
      this.history = views.length > 0 ? [EMPTY, ...views.slice(0, -1)] : [];
      this.stack = report.final;
    });
  }

  private requireSession(): string {
    if (this.sessionId === null) {
      throw new Error("no session yet");
    }
    return this.sessionId;
  }

  private enqueue(job: () => Promise<void>): Promise<void> {
    this.pending += 1;
    this.notify();
    const run = async () => {
      try {
        await job();
      } catch (error) {
        this.toast(error);
      } finally {
        this.pending -= 1;
        this.notify();
      }
    };
    const next = this.tail.then(run);
    this.tail = next;
    return next;
  }

  private toast(error: unknown): void {
    const toast: Toast =
      error instanceof ApiError
        ? { message: error.message, code: error.code }
        : { message: error instanceof Error ? error.message : String(error) };
    for (const listener of this.toastListeners) {
      listener(toast);
    }
  }

  private notify(): void {
    for (const listener of this.changeListeners) {
      listener();
    }
  }
}
