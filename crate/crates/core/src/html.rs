//! HTML to text conversion.
//!
//! Single-pass scanner, no DOM: drops script/style/head/noscript content,
//! strips remaining tags, decodes the XML-predefined entities plus
//! numeric references, turns block-level tag boundaries into line breaks
//! and collapses whitespace. Malformed input degrades to best-effort tag
//! stripping and never errors.

/// Tags whose entire content is dropped.
const SKIPPED_TAGS: [&str; 4] = ["script", "style", "head", "noscript"];

/// Tags that force a line break at both their open and close tag.
const BLOCK_TAGS: [&str; 30] = [
    "p", "div", "br", "li", "ul", "ol", "dl", "dt", "dd", "tr", "td", "th", "table", "h1", "h2",
    "h3", "h4", "h5", "h6", "blockquote", "pre", "hr", "article", "section", "header", "footer",
    "nav", "aside", "main", "figure",
];

#[derive(Clone, Copy, PartialEq)]
enum Pending {
    None,
    Space,
    Breaks(u8),
}

/// Converts HTML (or plain text, which passes through) to normalized
/// multi-line text. Idempotent on its own output.
pub fn html_to_text(input: &str) -> String {
    let bytes = input.as_bytes();
    let mut out = String::with_capacity(input.len() / 2);
    let mut pending = Pending::None;
    let mut i = 0;

    while i < bytes.len() {
        let rest = &input[i..];

        if rest.starts_with("<!--") {
            // comment: skip to matching close, or to EOF when unterminated
            i += rest.find("-->").map_or(rest.len(), |end| end + 3);
            continue;
        }

        if rest.starts_with('<') {
            if let Some((name, is_close, tag_len)) = scan_tag(rest) {
                i += tag_len;
                if !is_close && SKIPPED_TAGS.contains(&name.as_str()) && !is_self_closing(rest, tag_len) {
                    i += skip_element(&input[i..], &name);
                }
                if BLOCK_TAGS.contains(&name.as_str()) {
                    bump_breaks(&mut pending);
                }
                continue;
            }
            // '<' not opening a tag: literal character
        }

        let ch = rest.chars().next().unwrap();
        if ch == '\n' {
            bump_breaks(&mut pending);
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            if pending == Pending::None {
                pending = Pending::Space;
            }
            i += 1;
            continue;
        }

        if ch == '&' {
            if let Some((decoded, consumed)) = decode_entity(rest) {
                flush(&mut out, &mut pending);
                out.push(decoded);
                i += consumed;
                continue;
            }
        }

        flush(&mut out, &mut pending);
        out.push(ch);
        i += ch.len_utf8();
    }

    out
}

fn bump_breaks(pending: &mut Pending) {
    *pending = match *pending {
        Pending::Breaks(n) => Pending::Breaks(n.saturating_add(1)),
        _ => Pending::Breaks(1),
    };
}

fn flush(out: &mut String, pending: &mut Pending) {
    if !out.is_empty() {
        match *pending {
            Pending::None => {}
            Pending::Space => out.push(' '),
            Pending::Breaks(1) => out.push('\n'),
            Pending::Breaks(_) => out.push_str("\n\n"),
        }
    }
    *pending = Pending::None;
}

/// Parses `<...>` at the start of `rest`. Returns the lowercased tag
/// name, whether it is a closing tag, and the byte length consumed.
/// Returns None when '<' does not start anything tag-shaped.
fn scan_tag(rest: &str) -> Option<(String, bool, usize)> {
    let mut chars = rest.char_indices().skip(1).peekable();
    let (_, first) = chars.peek().copied()?;
    let is_close = first == '/';
    if is_close {
        chars.next();
    }
    let (_, name_start) = chars.peek().copied()?;
    if !(name_start.is_ascii_alphabetic() || name_start == '!' || name_start == '?') {
        return None;
    }
    let name: String = rest[1 + usize::from(is_close)..]
        .chars()
        .take_while(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_lowercase())
        .collect();
    // unterminated tag: strip through EOF
    let end = rest.find('>').map_or(rest.len(), |p| p + 1);
    Some((name, is_close, end))
}

fn is_self_closing(rest: &str, tag_len: usize) -> bool {
    rest[..tag_len].trim_end_matches('>').ends_with('/')
}

/// Byte length to skip until after `</name>`. The head element also ends
/// at an opening `<body` since real pages often omit `</head>`.
fn skip_element(rest: &str, name: &str) -> usize {
    let closing = format!("</{name}");
    let lower = rest.to_lowercase();
    let mut stop = lower.find(&closing).map(|p| {
        let after = p + closing.len();
        lower[after..].find('>').map_or(lower.len(), |q| after + q + 1)
    });
    if name == "head" {
        if let Some(body) = lower.find("<body") {
            stop = Some(stop.map_or(body, |s| s.min(body)));
        }
    }
    stop.unwrap_or(rest.len())
}

/// Decodes an entity at the start of `rest`: the five XML-predefined
/// names, `&nbsp;`, and decimal/hex numeric references.
fn decode_entity(rest: &str) -> Option<(char, usize)> {
    let end = rest.bytes().take(12).position(|b| b == b';')?;
    let body = rest.get(1..end)?;
    let ch = match body {
        "amp" => '&',
        "lt" => '<',
        "gt" => '>',
        "quot" => '"',
        "apos" => '\'',
        "nbsp" => ' ',
        _ => {
            let digits = body.strip_prefix('#')?;
            let code = if let Some(hex) = digits.strip_prefix('x').or_else(|| digits.strip_prefix('X')) {
                u32::from_str_radix(hex, 16).ok()?
            } else {
                digits.parse().ok()?
            };
            char::from_u32(code)?
        }
    };
    Some((ch, end + 1))
}
