import type { Canvas2D } from "../src/player.js";

// Deterministic replacement for requestAnimationFrame: callbacks queue up
// and run when the test advances the clock.
export class FakeClock {
  now = 0;
  private queue: { id: number; cb: (now: number) => void }[] = [];
  private nextId = 1;

  raf = (cb: (now: number) => void): number => {
    const id = this.nextId++;
    this.queue.push({ id, cb });
    return id;
  };

  cancelRaf = (id: number): void => {
    this.queue = this.queue.filter((entry) => entry.id !== id);
  };

  get pending(): number {
    return this.queue.length;
  }

  tick(ms: number): void {
    this.now += ms;
    const due = this.queue;
    this.queue = [];
    for (const entry of due) entry.cb(this.now);
  }

  // Tick at a fixed rate until no callback is scheduled; returns tick count.
  run(stepMs: number, maxSteps = 100000): number {
    let steps = 0;
    while (this.queue.length > 0 && steps < maxSteps) {
      this.tick(stepMs);
      steps += 1;
    }
    return steps;
  }
}

// Canvas context double that records every call and style assignment in order.
export function recordingContext(): { ctx: Canvas2D; ops: string[] } {
  const ops: string[] = [];
  const target = {
    beginPath: () => ops.push("beginPath"),
    moveTo: (x: number, y: number) => ops.push(`moveTo(${x},${y})`),
    lineTo: (x: number, y: number) => ops.push(`lineTo(${x},${y})`),
    quadraticCurveTo: (...a: number[]) => ops.push(`quadraticCurveTo(${a.join(",")})`),
    bezierCurveTo: (...a: number[]) => ops.push(`bezierCurveTo(${a.join(",")})`),
    arc: (...a: (number | boolean)[]) => ops.push(`arc(${a.join(",")})`),
    stroke: () => ops.push("stroke"),
    fillText: (t: string, x: number, y: number) => ops.push(`fillText(${t},${x},${y})`),
    clearRect: (...a: number[]) => ops.push(`clearRect(${a.join(",")})`),
  };
  const ctx = new Proxy(target as unknown as Record<string, unknown>, {
    set(obj, prop, value) {
      ops.push(`${String(prop)}=${String(value)}`);
      obj[String(prop)] = value;
      return true;
    },
  });
  return { ctx: ctx as unknown as Canvas2D, ops };
}

export function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
