"""graph6, edge-list and DOT input/output."""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from kfox.graph import MAX_ORDER, Edge, Graph, GraphError, norm_edge

HEADER = ">>graph6<<"


class FormatError(GraphError):
    """Malformed input; ``offset`` is the 0-based byte position of the problem."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise GraphError("order too large for graph6")


def to_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            bits.append(col >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    out = [_encode_n(g.n)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


def from_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    s = text.strip()
    base = len(text) - len(text.lstrip())
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base += len(HEADER)
    if not s:
        raise FormatError("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise FormatError(f"invalid graph6 character {ch!r}", base + i)
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise FormatError("graph6 order exceeds supported range", base + 1)
        if len(s) < 4:
            raise FormatError("truncated graph6 order header", base + len(s))
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        pos = 4
    else:
        n = ord(s[0]) - 63
        pos = 1
    if n < 1:
        raise FormatError("graph6 order must be at least 1", base)
    if n > MAX_ORDER:
        raise FormatError(f"order {n} exceeds the supported maximum {MAX_ORDER}", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) != need:
        raise FormatError(
            f"expected {need} data bytes for order {n}, found {len(body)}",
            base + pos + min(len(body), need),
        )
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbits % 6:
        last = ord(body[-1]) - 63
        if last & ((1 << (6 - nbits % 6)) - 1):
            raise FormatError("nonzero padding bits", base + pos + need - 1)
    return Graph._trusted(adj)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield from_graph6(line)


def to_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def parse_edge_pairs(text: str) -> list[Edge]:
    """Parse ``u v`` pairs, one per line; ``#`` starts a comment."""
    out = []
    offset = 0
    for line in text.splitlines(keepends=True):
        content = line.split("#", 1)[0].strip()
        if content:
            parts = content.split()
            if len(parts) != 2:
                raise FormatError(f"expected 'u v', got {content!r}", offset)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise FormatError(f"non-integer vertex in {content!r}", offset) from None
            if u < 0 or v < 0:
                raise FormatError("vertices must be nonnegative", offset)
            out.append((u, v))
        offset += len(line.encode())
    return out


def from_edge_list(text: str, n: Optional[int] = None) -> Graph:
    pairs = parse_edge_pairs(text)
    if n is None:
        n = 1 + max((max(p) for p in pairs), default=0)
    seen = set()
    for u, v in pairs:
        e = norm_edge(u, v)
        if e in seen:
            raise GraphError(f"duplicate edge {e}")
        seen.add(e)
    return Graph.from_edges(n, pairs)


def to_dot(
    g: Graph,
    contractible: Iterable[Edge] = (),
    tree: Iterable[Edge] = (),
    name: str = "G",
) -> str:
    """DOT text; contractible edges are dashed, tree edges drawn bold."""
    dashed = {norm_edge(*e) for e in contractible}
    bold = {norm_edge(*e) for e in tree}
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for e in g.edges:
        attrs = []
        if e in dashed:
            attrs.append("style=dashed")
        if e in bold:
            attrs.append("penwidth=3")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {e[0]} -- {e[1]}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
