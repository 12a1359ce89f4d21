import { describe, expect, it } from "vitest";

import { highlight, plainText } from "../src/highlight.js";
import { MAP_COLORING } from "./programs.js";

describe("highlight", () => {
  it("marks the three section keywords", () => {
    const html = highlight(MAP_COLORING);
    expect(html).toContain('<span class="tok-kw">sorts</span>');
    expect(html).toContain('<span class="tok-kw">predicates</span>');
    expect(html).toContain('<span class="tok-kw">rules</span>');
  });

  it("only treats standalone lines as section headers", () => {
    const html = highlight("rules\nrules(a).\n");
    const matches = html.match(/tok-kw/g) ?? [];
    expect(matches.length).toBe(1);
  });

  it("marks sort names and variables", () => {
    const html = highlight("#color = {red, green, blue}.\nofColor(S, C).");
    expect(html).toContain('<span class="tok-sort">#color</span>');
    expect(html).toContain('<span class="tok-var">S</span>');
    expect(html).toContain('<span class="tok-var">C</span>');
    expect(html).not.toContain('<span class="tok-var">red</span>');
  });

  it("marks comments to end of line", () => {
    const html = highlight("p(a). % a fact about a\nq(b).");
    expect(html).toContain('<span class="tok-comment">% a fact about a</span>');
    expect(html).not.toContain('tok-comment">q');
  });

  it("produces nothing special for an empty buffer", () => {
    expect(highlight("")).toBe("");
  });

  it("preserves the text exactly", () => {
    const source = MAP_COLORING + "% x < y & z > w\np(X1_b).";
    expect(plainText(highlight(source))).toBe(source);
  });

  it("escapes html in the source", () => {
    const html = highlight("p(X) :- q(X), X < 3. % <b>bold</b>");
    expect(html).not.toContain("<b>");
    expect(html).toContain("&lt;b&gt;");
  });
});
