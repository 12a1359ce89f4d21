// Syntax highlighting for the editor pane. Produces HTML where each token
// of interest is wrapped in a span; the concatenated text content always
// equals the input, so the overlay lines up with the textarea underneath.

const SECTION_KEYWORDS = new Set(["sorts", "predicates", "rules"]);

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function span(cls: string, text: string): string {
  return `<span class="tok-${cls}">${escapeHtml(text)}</span>`;
}

function highlightCode(code: string): string {
  let out = "";
  let i = 0;
  while (i < code.length) {
    const rest = code.slice(i);

    const sort = rest.match(/^#[a-z][A-Za-z0-9_]*/);
    if (sort) {
      out += span("sort", sort[0]);
      i += sort[0].length;
      continue;
    }

    const word = rest.match(/^[A-Za-z_][A-Za-z0-9_]*/);
    if (word) {
      const name = word[0];
      if (/^[A-Z]/.test(name)) {
        out += span("var", name);
      } else {
        out += escapeHtml(name);
      }
      i += name.length;
      continue;
    }

    const number = rest.match(/^[0-9]+/);
    if (number) {
      out += span("num", number[0]);
      i += number[0].length;
      continue;
    }

    out += escapeHtml(code[i]);
    i += 1;
  }
  return out;
}

export function highlightLine(line: string): string {
  // a section header is a keyword standing alone on its line
  const header = line.match(/^(\s*)(sorts|predicates|rules)(\s*)$/);
  if (header && SECTION_KEYWORDS.has(header[2])) {
    return escapeHtml(header[1]) + span("kw", header[2]) + escapeHtml(header[3]);
  }
  const commentAt = line.indexOf("%");
  if (commentAt >= 0) {
    return highlightCode(line.slice(0, commentAt)) + span("comment", line.slice(commentAt));
  }
  return highlightCode(line);
}

export function highlight(source: string): string {
  return source.split("\n").map(highlightLine).join("\n");
}

// Test helper: the text content of the highlighted HTML, which must equal
// the original source exactly.
export function plainText(html: string): string {
  return html
    .replace(/<[^>]*>/g, "")
    .replace(/&lt;/g, "<")
    .replace(/&gt;/g, ">")
    .replace(/&amp;/g, "&");
}
