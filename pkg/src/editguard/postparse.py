"""Convert HTML-tagged post bodies into text/code channels.

Q&A post bodies arrive as rendered HTML fragments. Code lives in
``<pre><code>`` blocks; everything else is prose (inline ``<code>`` counts as
prose with markup, so turning a word into an inline code element registers as
a text formatting change). Parsing is tolerant: unclosed tags are auto-closed,
unknown tags act as transparent containers, and malformed input never raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html.parser import HTMLParser
from typing import Optional, Union

from .core import ParsedBody

_VOID_TAGS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)

# Elements whose boundaries separate words in the plain-text rendering.
_BLOCK_TAGS = frozenset(
    "p div pre blockquote li ul ol table tr td th h1 h2 h3 h4 h5 h6 br hr dt dd".split()
)

# Only these named entities are decoded; anything else passes through
# verbatim so that exotic entities survive the round trip unchanged.
_NAMED_ENTITIES = {"amp": "&", "lt": "<", "gt": ">", "quot": '"'}


@dataclass
class _Element:
    tag: str
    attrs: list[tuple[str, Optional[str]]] = field(default_factory=list)
    children: list[Union["_Element", str]] = field(default_factory=list)

    def attr(self, name: str) -> Optional[str]:
        for k, v in self.attrs:
            if k == name:
                return v
        return None


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=False)
        self.root = _Element("#root")
        self._stack = [self.root]

    def _append(self, node: Union[_Element, str]) -> None:
        self._stack[-1].children.append(node)

    def handle_starttag(self, tag, attrs):
        el = _Element(tag, list(attrs))
        self._append(el)
        if tag not in _VOID_TAGS:
            self._stack.append(el)

    def handle_startendtag(self, tag, attrs):
        self._append(_Element(tag, list(attrs)))

    def handle_endtag(self, tag):
        # Close back to the matching open tag; stray end tags are dropped.
        for i in range(len(self._stack) - 1, 0, -1):
            if self._stack[i].tag == tag:
                del self._stack[i:]
                return

    def handle_data(self, data):
        self._append(data)

    def handle_entityref(self, name):
        self._append(_NAMED_ENTITIES.get(name, f"&{name};"))

    def handle_charref(self, name):
        try:
            code = int(name[1:], 16) if name.lower().startswith("x") else int(name)
            self._append(chr(code))
        except (ValueError, OverflowError):
            self._append(f"&#{name};")

    def handle_comment(self, data):
        pass


def _build_tree(html: str) -> _Element:
    builder = _TreeBuilder()
    builder.feed(html)
    builder.close()
    return builder.root


def _escape_data(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(value: str) -> str:
    return value.replace("&", "&amp;").replace('"', "&quot;")


def _serialize(node: Union[_Element, str], out: list[str]) -> None:
    if isinstance(node, str):
        out.append(_escape_data(node))
        return
    parts = [node.tag]
    for k, v in node.attrs:
        parts.append(k if v is None else f'{k}="{_escape_attr(v)}"')
    out.append("<" + " ".join(parts) + ">")
    for child in node.children:
        _serialize(child, out)
    if node.tag not in _VOID_TAGS:
        out.append(f"</{node.tag}>")


def serialize(node) -> str:
    """Render a node (or list of nodes) back to canonical HTML."""
    out: list[str] = []
    nodes = node if isinstance(node, list) else [node]
    for n in nodes:
        if isinstance(n, _Element) and n.tag == "#root":
            for child in n.children:
                _serialize(child, out)
        else:
            _serialize(n, out)
    return "".join(out)


def _plain_text(node: Union[_Element, str], out: list[str], block_spaces: bool) -> None:
    if isinstance(node, str):
        out.append(node)
        return
    boundary = block_spaces and node.tag in _BLOCK_TAGS
    if boundary and out and not out[-1].endswith((" ", "\n", "\t")):
        out.append(" ")
    for child in node.children:
        _plain_text(child, out, block_spaces)
    if boundary and out and not out[-1].endswith((" ", "\n", "\t")):
        out.append(" ")


def plain_text(node, block_spaces: bool = True) -> str:
    """Tag-stripped content of a node tree (entities already decoded).

    With ``block_spaces`` a single space is inserted at block element
    boundaries so adjacent paragraphs do not fuse into one word, and outer
    spaces are trimmed; without it the content is returned verbatim.
    """
    out: list[str] = []
    nodes = node if isinstance(node, list) else [node]
    for n in nodes:
        _plain_text(n, out, block_spaces)
    text = "".join(out)
    return text.strip(" ") if block_spaces else text


def _is_code_block(node: Union[_Element, str]) -> bool:
    return (
        isinstance(node, _Element)
        and node.tag == "pre"
        and any(isinstance(c, _Element) and c.tag == "code" for c in node.children)
    )


def _collect_hyperlinks(node: Union[_Element, str], out: list[str]) -> None:
    if isinstance(node, str):
        return
    if node.tag == "a":
        href = node.attr("href")
        if href is not None:
            out.append(href)
    for child in node.children:
        _collect_hyperlinks(child, out)


def parse_post(body_html: str) -> ParsedBody:
    """Split a post body into its text and code channels.

    The code channel is the concatenation of ``<code>`` elements that are
    direct children of ``<pre>`` elements, in document order, joined by
    newlines; those blocks are removed from the text channel. Hyperlinks are
    every ``href`` value of an ``<a>`` element, in document order, duplicates
    preserved.
    """
    if not body_html:
        return ParsedBody()
    root = _build_tree(body_html)

    code_elements: list[_Element] = []

    def strip_code_blocks(el: _Element) -> None:
        kept: list[Union[_Element, str]] = []
        for child in el.children:
            if _is_code_block(child):
                # Code children feed the code channel; anything else inside
                # the pre (rare in practice) stays in the text channel.
                for sub in child.children:
                    if isinstance(sub, _Element) and sub.tag == "code":
                        code_elements.append(sub)
                    else:
                        kept.append(sub)
                continue
            if isinstance(child, _Element):
                strip_code_blocks(child)
            kept.append(child)
        el.children = kept

    strip_code_blocks(root)

    links: list[str] = []
    _collect_hyperlinks(root, links)

    return ParsedBody(
        text_with_tags=serialize(root),
        text_plain=plain_text(root),
        code_with_tags="\n".join(serialize(c) for c in code_elements),
        code_plain="\n".join(plain_text(c, block_spaces=False) for c in code_elements),
        hyperlinks=tuple(links),
    )


def _has_class(el: _Element, token: str) -> bool:
    cls = el.attr("class")
    return cls is not None and token in cls.split()


def extract_diff_spans(revision_html: str) -> tuple[str, str, str, str]:
    """Pull added/removed content out of a rendered revision-diff fragment.

    Elements whose class list contains ``diff-add`` contribute to the added
    outputs, ``diff-delete`` to the removed ones; spans inside pre/code blocks
    are routed to the code outputs. Returns
    ``(added_text, removed_text, added_code, removed_code)``.
    """
    added_text: list[str] = []
    removed_text: list[str] = []
    added_code: list[str] = []
    removed_code: list[str] = []

    def walk(node: Union[_Element, str], in_code: bool) -> None:
        if isinstance(node, str):
            return
        inside = in_code or node.tag in ("pre", "code")
        if _has_class(node, "diff-add"):
            (added_code if inside else added_text).append(
                plain_text(node, block_spaces=False)
            )
            return
        if _has_class(node, "diff-delete"):
            (removed_code if inside else removed_text).append(
                plain_text(node, block_spaces=False)
            )
            return
        for child in node.children:
            walk(child, inside)

    if revision_html:
        walk(_build_tree(revision_html), False)
    return (
        "".join(added_text),
        "".join(removed_text),
        "".join(added_code),
        "".join(removed_code),
    )


def normalize_text(s: str) -> str:
    """Delete newline characters, strip outer whitespace, lowercase.

    Newlines are removed outright rather than collapsed to spaces, so a
    reflow-only edit compares equal in the plain channel. Internal runs of
    spaces are preserved. Idempotent.
    """
    return s.replace("\r", "").replace("\n", "").strip().lower()
