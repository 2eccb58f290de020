/** The page: controls, board, stepper, move log, evaluation chip.
 *
 * All game state lives on the server.  The board is redrawn from the last
 * server response and never patched locally; a rejected move changes
 * nothing but the toast.  One request is in flight at a time; inputs are
 * disabled while the engine thinks.
 */

import { ApiError, Client } from "./api.js";
import type { FetchLike, GraphDoc, SessionBody } from "./api.js";
import { displayLabel, renderBoard } from "./board.js";
import { boardChoices } from "./graphs.js";

export interface AppOptions {
  base: string;
  fetchFn?: FetchLike;
  animationMs?: number;
}

interface PendingEdge {
  u: string;
  v: string;
  to: string;
  max: number;
  amount: number;
}

const ENGINE_NAMES = ["optimal", "p1odd", "p2even", "random"];

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export class App {
  private readonly client: Client;
  private readonly animationMs: number;
  private session: SessionBody | null = null;
  private graphDoc: GraphDoc | null = null;
  private engineSide: "P1" | "P2" | null = null;
  private busy = false;
  private pending: PendingEdge | null = null;
  private lastEdge: [string, string] | null = null;
  private bestEdge: [string, string] | null = null;
  private ops: Promise<unknown> = Promise.resolve();

  private controls!: HTMLFieldSetElement;
  private graphPick!: HTMLSelectElement;
  private modePick!: HTMLSelectElement;
  private enginePick!: HTMLSelectElement;
  private humanFirst!: HTMLInputElement;
  private banner!: HTMLElement;
  private bannerText!: HTMLElement;
  private winner!: HTMLElement;
  private status!: HTMLElement;
  private chip!: HTMLElement;
  private svg!: SVGSVGElement;
  private stepper!: HTMLElement;
  private stepperLabel!: HTMLElement;
  private amountText!: HTMLElement;
  private toast!: HTMLElement;
  private log!: HTMLOListElement;

  constructor(root: HTMLElement, opts: AppOptions) {
    this.client = new Client(opts.base, opts.fetchFn);
    this.animationMs = opts.animationMs ?? 350;
    this.buildDom(root);
  }

  /** Settles when the most recently started operation has finished. */
  idle(): Promise<void> {
    return this.ops.then(() => undefined);
  }

  get sessionId(): string | null {
    return this.session ? this.session.id : null;
  }

  private track<T>(work: Promise<T>): Promise<T> {
    this.ops = work.catch(() => undefined);
    return work;
  }

  private buildDom(root: HTMLElement): void {
    root.innerHTML = `
      <fieldset class="controls" data-role="controls">
        <select data-role="graph-pick"></select>
        <select data-role="mode">
          <option value="HumanVsEngine">vs engine</option>
          <option value="HotSeat">hot seat</option>
        </select>
        <select data-role="engine"></select>
        <label><input type="checkbox" data-role="human-first" checked> you start</label>
        <button data-role="new-game">new game</button>
        <button data-role="evaluate">evaluate</button>
      </fieldset>
      <div class="banner" data-role="banner" hidden>
        <span data-role="banner-text"></span>
        <button data-role="retry">retry</button>
      </div>
      <div class="winner" data-role="winner" hidden></div>
      <div class="statusline">
        <span data-role="status"></span>
        <span class="chip" data-role="chip" hidden></span>
      </div>
      <div class="board-wrap">
        <svg data-role="board" class="board"></svg>
        <div class="stepper" data-role="stepper" hidden>
          <span data-role="stepper-label"></span>
          <button data-role="minus">−</button>
          <span class="amount" data-role="amount"></span>
          <button data-role="plus">+</button>
          <button data-role="stepper-go">move</button>
          <button data-role="stepper-cancel">cancel</button>
        </div>
        <div class="toast" data-role="toast" hidden></div>
      </div>
      <ol class="log" data-role="log"></ol>
    `;
    const pick = <T extends Element>(role: string): T =>
      root.querySelector(`[data-role="${role}"]`) as T;

    this.controls = pick("controls");
    this.graphPick = pick("graph-pick");
    this.modePick = pick("mode");
    this.enginePick = pick("engine");
    this.humanFirst = pick("human-first");
    this.banner = pick("banner");
    this.bannerText = pick("banner-text");
    this.winner = pick("winner");
    this.status = pick("status");
    this.chip = pick("chip");
    this.svg = pick("board");
    this.stepper = pick("stepper");
    this.stepperLabel = pick("stepper-label");
    this.amountText = pick("amount");
    this.toast = pick("toast");
    this.log = pick("log");

    for (const choice of boardChoices()) {
      const option = document.createElement("option");
      option.value = choice.key;
      option.textContent = choice.title;
      this.graphPick.appendChild(option);
    }
    for (const name of ENGINE_NAMES) {
      const option = document.createElement("option");
      option.value = name;
      option.textContent = name;
      this.enginePick.appendChild(option);
    }

    pick<HTMLButtonElement>("new-game").addEventListener("click", () => {
      this.track(this.newGame());
    });
    pick<HTMLButtonElement>("evaluate").addEventListener("click", () => {
      this.track(this.evaluate());
    });
    pick<HTMLButtonElement>("retry").addEventListener("click", () => {
      this.track(this.newGame());
    });
    pick<HTMLButtonElement>("minus").addEventListener("click", () => this.bumpAmount(-1));
    pick<HTMLButtonElement>("plus").addEventListener("click", () => this.bumpAmount(1));
    pick<HTMLButtonElement>("stepper-go").addEventListener("click", () => {
      if (this.pending && !this.busy) {
        const { to, amount } = this.pending;
        this.closeStepper();
        this.track(this.submitMove(to, amount));
      }
    });
    pick<HTMLButtonElement>("stepper-cancel").addEventListener("click", () => this.closeStepper());
  }

  private setBusy(busy: boolean): void {
    this.busy = busy;
    this.controls.disabled = busy;
  }

  private showBanner(text: string, retry: boolean): void {
    this.bannerText.textContent = text;
    (this.banner.querySelector('[data-role="retry"]') as HTMLElement).hidden = !retry;
    this.banner.hidden = false;
  }

  private showToast(text: string): void {
    this.toast.textContent = text;
    this.toast.hidden = false;
  }

  private clearTransients(): void {
    this.toast.hidden = true;
    this.banner.hidden = true;
    this.svg.classList.remove("shake");
  }

  private closeStepper(): void {
    this.pending = null;
    this.stepper.hidden = true;
  }

  private bumpAmount(delta: number): void {
    if (!this.pending) return;
    const next = this.pending.amount + delta;
    this.pending.amount = Math.min(this.pending.max, Math.max(1, next));
    this.amountText.textContent = String(this.pending.amount);
  }

  private async newGame(): Promise<void> {
    if (this.busy) return;
    this.clearTransients();
    this.closeStepper();
    this.chip.hidden = true;
    this.lastEdge = null;
    this.bestEdge = null;
    this.setBusy(true);
    try {
      const choice = boardChoices().find((c) => c.key === this.graphPick.value)!;
      this.graphDoc = choice.doc();
      const mode = this.modePick.value;
      const request: Parameters<Client["newSession"]>[0] = {
        graph: this.graphDoc,
        mode,
        seed: 0,
      };
      if (mode === "HumanVsEngine") {
        request.engine = this.enginePick.value;
        request.humanFirst = this.humanFirst.checked;
        this.engineSide = this.humanFirst.checked ? "P2" : "P1";
      } else {
        this.engineSide = null;
      }
      const body = await this.client.newSession(request);
      if (body.engineMove) {
        this.lastEdge = [this.graphDoc.vertices[this.graphDoc.start], body.engineMove.to];
      }
      this.render(body);
    } catch (err) {
      this.session = null;
      this.status.textContent = "";
      this.log.innerHTML = "";
      while (this.svg.firstChild) this.svg.removeChild(this.svg.firstChild);
      this.winner.hidden = true;
      if (err instanceof ApiError) {
        this.showBanner(`cannot start: ${err.detail}`, false);
      } else {
        this.showBanner("server unreachable", true);
      }
    } finally {
      this.setBusy(false);
    }
  }

  private onEdgeClick(u: string, v: string, w: number): void {
    if (!this.session || this.busy || this.session.state.terminal) return;
    this.toast.hidden = true;
    const position = this.session.state.position;
    if (u !== position && v !== position) {
      this.showToast("pick an edge at the piece");
      return;
    }
    const to = u === position ? v : u;
    if (w === 1) {
      this.closeStepper();
      this.track(this.submitMove(to, 1));
      return;
    }
    this.pending = { u, v, to, max: w, amount: w };
    this.stepperLabel.textContent =
      `${displayLabel(position)} → ${displayLabel(to)}: remove`;
    this.amountText.textContent = String(w);
    this.stepper.hidden = false;
  }

  private async submitMove(to: string, amount: number): Promise<void> {
    if (!this.session || this.busy) return;
    this.clearTransients();
    this.chip.hidden = true;
    this.bestEdge = null;
    const from = this.session.state.position;
    this.setBusy(true);
    try {
      const body = await this.client.move(this.session.id, to, amount);
      const humanEdge: [string, string] = [from, to];
      if (body.engineMove && this.animationMs > 0) {
        this.lastEdge = humanEdge;
        this.render(body, body.history.length - 1);
        await sleep(this.animationMs);
        this.lastEdge = [to, body.engineMove.to];
        this.render(body);
      } else {
        this.lastEdge = body.engineMove ? [to, body.engineMove.to] : humanEdge;
        this.render(body);
      }
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.svg.classList.add("shake");
        this.showToast(err.detail);
      } else if (err instanceof ApiError) {
        this.showBanner(`move failed: ${err.detail}`, false);
      } else {
        this.showBanner("server unreachable", true);
      }
    } finally {
      this.setBusy(false);
    }
  }

  private async evaluate(): Promise<void> {
    if (!this.session || this.busy) return;
    if (this.session.state.terminal) {
      this.chip.textContent = "game over";
      this.chip.hidden = false;
      return;
    }
    this.setBusy(true);
    try {
      const result = await this.client.solve(this.session.id);
      if (result.aborted) {
        this.chip.textContent = "evaluation unavailable";
        this.bestEdge = null;
      } else {
        const side = this.session.state.toMove;
        const verdict = result.outcome === "MoverWins" ? "winning" : "losing";
        this.chip.textContent = `${side} ${verdict}`;
        this.bestEdge = result.bestMove
          ? [this.session.state.position, result.bestMove.to]
          : null;
      }
      this.chip.hidden = false;
      this.render(this.session);
    } catch (err) {
      if (err instanceof ApiError) {
        this.showBanner(`evaluation failed: ${err.detail}`, false);
      } else {
        this.showBanner("server unreachable", true);
      }
    } finally {
      this.setBusy(false);
    }
  }

  /** Redraw everything from a server response, optionally truncating the
   * log to the first historyLength entries (engine reply staging). */
  private render(body: SessionBody, historyLength?: number): void {
    this.session = body;
    renderBoard(this.svg, body.state, {
      lastEdge: this.lastEdge,
      bestEdge: this.bestEdge,
      onEdgeClick: (u, v, w) => this.onEdgeClick(u, v, w),
    });

    const state = body.state;
    if (state.terminal) {
      const winnerName = state.toMove === "P1" ? "P2" : "P1";
      this.winner.textContent = `${winnerName} wins`;
      this.winner.hidden = false;
      this.status.textContent = "game over";
    } else {
      this.winner.hidden = true;
      const engine = this.engineSide === state.toMove ? " (engine)" : "";
      this.status.textContent = `${state.toMove} to move${engine}`;
    }

    const shown = historyLength === undefined
      ? body.history
      : body.history.slice(0, historyLength);
    this.log.innerHTML = "";
    shown.forEach((move, i) => {
      const mover = i % 2 === 0 ? "P1" : "P2";
      const tag = this.engineSide === mover ? `${mover} (engine)` : mover;
      const item = document.createElement("li");
      item.textContent =
        `${tag}: → ${displayLabel(move.to)} (took ${move.amount})`;
      this.log.appendChild(item);
    });
  }
}
