// Replays a frame script on a canvas. Frame selection is timestamp based:
// frame i is shown at time i/60 s, so a slow machine skips frames instead
// of stretching the animation, and frames never play out of order.

import type { FrameScript, Shape } from "./api.js";

export interface Canvas2D {
  lineWidth: number;
  font: string;
  lineCap: string;
  textAlign: string;
  strokeStyle: string;
  fillStyle: string;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  quadraticCurveTo(cx: number, cy: number, x: number, y: number): void;
  bezierCurveTo(
    c1x: number,
    c1y: number,
    c2x: number,
    c2y: number,
    x: number,
    y: number,
  ): void;
  arc(
    x: number,
    y: number,
    radius: number,
    start: number,
    end: number,
    anticlockwise: boolean,
  ): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
  clearRect(x: number, y: number, w: number, h: number): void;
}

export interface PlayerHooks {
  raf: (cb: (now: number) => void) => number;
  cancelRaf: (id: number) => void;
  onFrame?: (index: number) => void;
  onDone?: () => void;
}

const STYLE_KEYS = [
  "lineWidth",
  "font",
  "lineCap",
  "textAlign",
  "strokeStyle",
  "fillStyle",
] as const;

export function drawShape(ctx: Canvas2D, shape: Shape): void {
  for (const key of STYLE_KEYS) {
    if (key in shape.style) {
      (ctx as unknown as Record<string, string | number>)[key] = shape.style[key];
    }
  }
  const a = shape.args as number[];
  switch (shape.cmd) {
    case "draw_line":
      ctx.beginPath();
      ctx.moveTo(a[0], a[1]);
      ctx.lineTo(a[2], a[3]);
      ctx.stroke();
      break;
    case "draw_quad_curve":
      ctx.beginPath();
      ctx.moveTo(a[0], a[1]);
      ctx.quadraticCurveTo(a[2], a[3], a[4], a[5]);
      ctx.stroke();
      break;
    case "draw_bezier_curve":
      ctx.beginPath();
      ctx.moveTo(a[0], a[1]);
      ctx.bezierCurveTo(a[2], a[3], a[4], a[5], a[6], a[7]);
      ctx.stroke();
      break;
    case "draw_arc_curve":
      ctx.beginPath();
      ctx.arc(a[0], a[1], a[2], (a[3] * Math.PI) / 180, (a[4] * Math.PI) / 180, false);
      ctx.stroke();
      break;
    case "draw_text":
      ctx.fillText(String(shape.args[0]), a[1] as number, a[2] as number);
      break;
  }
}

export class FramePlayer {
  private ctx: Canvas2D;
  private frames: Shape[][];
  private width: number;
  private height: number;
  private hooks: PlayerHooks;
  private start: number | null = null;
  private lastDrawn = -1;
  private rafId: number | null = null;
  playing = false;

  constructor(
    ctx: Canvas2D,
    script: FrameScript,
    hooks: PlayerHooks,
    width = 500,
    height = 500,
  ) {
    this.ctx = ctx;
    this.frames = script.frames;
    this.hooks = hooks;
    this.width = width;
    this.height = height;
  }

  play(): void {
    this.stop();
    this.playing = true;
    this.start = null;
    this.lastDrawn = -1;
    this.rafId = this.hooks.raf(this.step);
  }

  stop(): void {
    if (this.rafId !== null) {
      this.hooks.cancelRaf(this.rafId);
      this.rafId = null;
    }
    this.playing = false;
  }

  private step = (now: number): void => {
    if (!this.playing) return;
    if (this.start === null) this.start = now;
    const frame = Math.floor(((now - this.start) / 1000) * 60);
    if (frame >= this.frames.length) {
      this.playing = false;
      this.rafId = null;
      this.hooks.onDone?.();
      return;
    }
    if (frame > this.lastDrawn) {
      this.ctx.clearRect(0, 0, this.width, this.height);
      for (const shape of this.frames[frame]) {
        drawShape(this.ctx, shape);
      }
      this.lastDrawn = frame;
      this.hooks.onFrame?.(frame);
    }
    this.rafId = this.hooks.raf(this.step);
  };
}
