/** Minimal dependency-free syntax highlighting for Python-ish snippets. */

const KEYWORDS = new Set(
  `False None True and as assert async await break class continue def del
   elif else except finally for from global if import in is lambda nonlocal
   not or pass raise return try while with yield`.split(/\s+/).filter(Boolean),
);

const TOKEN_PATTERN =
  /(#[^\n]*)|("""[\s\S]*?"""|'''[\s\S]*?'''|"(?:[^"\\\n]|\\.)*"|'(?:[^'\\\n]|\\.)*')|\b(\d[\w.]*)\b|\b([A-Za-z_]\w*)\b/g;

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/** Returns HTML with <span class="tok-..."> wrappers; input is escaped. */
export function highlight(code: string): string {
  let html = '';
  let last = 0;
  for (const match of code.matchAll(TOKEN_PATTERN)) {
    const index = match.index ?? 0;
    html += escapeHtml(code.slice(last, index));
    const [text, comment, str, num, name] = match;
    if (comment !== undefined) {
      html += `<span class="tok-comment">${escapeHtml(text)}</span>`;
    } else if (str !== undefined) {
      html += `<span class="tok-string">${escapeHtml(text)}</span>`;
    } else if (num !== undefined) {
      html += `<span class="tok-number">${escapeHtml(text)}</span>`;
    } else if (name !== undefined && KEYWORDS.has(name)) {
      html += `<span class="tok-keyword">${escapeHtml(text)}</span>`;
    } else {
      html += escapeHtml(text);
    }
    last = index + text.length;
  }
  html += escapeHtml(code.slice(last));
  return html;
}
