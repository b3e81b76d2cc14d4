"""graph6 and plain edge-list reading and writing."""

from __future__ import annotations

from typing import IO, Iterable, Iterator

from .graph import Graph

GRAPH6_HEADER = ">>graph6<<"


class FormatError(ValueError):
    """Malformed graph input."""


def _encode_size(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph too large for graph6")


def graph6_encode(g: Graph) -> str:
    """graph6 string of ``g`` (no header, no newline)."""
    n = g.n
    out = bytearray(_encode_size(n))
    bits = []
    for j in range(1, n):
        nbrs = set(g.neighbors(j))
        for i in range(j):
            bits.append(1 if i in nbrs else 0)
    bits.extend([0] * (-len(bits) % 6))
    for k in range(0, len(bits), 6):
        chunk = bits[k:k + 6]
        out.append(63 + sum(b << (5 - t) for t, b in enumerate(chunk)))
    return out.decode("ascii")


def graph6_decode(text: str | bytes) -> Graph:
    """Parse one graph6 string; a leading ``>>graph6<<`` header is accepted."""
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(GRAPH6_HEADER.encode()):
        data = data[len(GRAPH6_HEADER):]
    if not data:
        raise FormatError("empty graph6 string")
    for b in data:
        if not 63 <= b <= 126:
            raise FormatError(f"byte {b!r} outside the graph6 printable range")
    vals = [b - 63 for b in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    elif len(vals) >= 8 and vals[1] == 63:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        raise FormatError("truncated graph6 size header")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) != need:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    for t in range(nbits, need * 6):
        if (body[t // 6] >> (5 - t % 6)) & 1:
            raise FormatError("nonzero padding bits in graph6 string")
    return Graph.from_edges(n, edges)


def edgelist_encode(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _edgelist_blocks(lines: Iterable[str]) -> Iterator[list[tuple[int, int]] | tuple[int, int]]:
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected two integers, got {raw!r}")
        try:
            yield int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"expected two integers, got {raw!r}") from None


def read_edgelist(lines: Iterable[str]) -> Iterator[Graph]:
    """Graphs from concatenated ``n m`` + ``m`` edge-line blocks (0-indexed)."""
    pairs = _edgelist_blocks(lines)
    for n, m in pairs:
        if n < 0 or m < 0:
            raise FormatError(f"negative header {n} {m}")
        edges = []
        for _ in range(m):
            try:
                edges.append(next(pairs))
            except StopIteration:
                raise FormatError(f"expected {m} edges, input ended after {len(edges)}") from None
        try:
            yield Graph.from_edges(n, edges)
        except ValueError as exc:
            raise FormatError(str(exc)) from None


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield graph6_decode(line)


def read_graphs(stream: IO[str], fmt: str = "graph6") -> Iterator[Graph]:
    if fmt == "graph6":
        return read_graph6_lines(stream)
    if fmt == "edgelist":
        return read_edgelist(stream)
    raise ValueError(f"unknown format {fmt!r}")


def read_matching(lines: Iterable[str]) -> list[tuple[int, int]]:
    """Edge pairs ``u v``, one per line; blank lines and ``#`` comments skipped."""
    return list(_edgelist_blocks(lines))  # type: ignore[arg-type]
