"""Cylinder tilings of rowmotion orbits.

An orbit of size ``c`` on a tree with ``n`` leaf labels becomes a tiling
of an ``n``-row, ``c``-column cylinder: column ``t`` shows the ``t``-th
antichain, each member blackening the rows of its leaf interval, and runs
of the same branch walked bottom-to-top merge into a single black tile of
shape ``interval x beta`` (possibly wrapping the column seam).  All
remaining cells are 1x1 yellow tiles.  The two local succession rules —
what must follow a black tile and what must follow a maximal yellow run —
characterise exactly the tilings that arise this way, which is what
:func:`validate_tiling` checks and :func:`orbit_of_tiling` inverts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .poset import RootedTree, interval_partition
from .rowmotion import Orbit, _rho_mask

__all__ = [
    "Tile",
    "Tiling",
    "TilingReport",
    "tiling_of_orbit",
    "orbit_of_tiling",
    "validate_tiling",
    "tile_counts",
    "render_tiling",
]

BLACK = "black"
YELLOW = "yellow"


@dataclass(frozen=True)
class Tile:
    color: str
    interval: tuple[int, int]  # leaf-label rows lo..hi, inclusive
    start: int  # column of the first cell, 0-based mod columns
    width: int

    def columns(self, total: int) -> list[int]:
        return [(self.start + o) % total for o in range(self.width)]


@dataclass(frozen=True)
class Tiling:
    tree: RootedTree
    columns: int
    tiles: tuple[Tile, ...]

    @property
    def rows(self) -> int:
        return self.tree.n_leaves


@dataclass(frozen=True)
class TilingReport:
    ok: bool
    violation: Optional[str] = None


def _sorted_tiles(tiles) -> tuple[Tile, ...]:
    return tuple(sorted(tiles, key=lambda t: (t.start, t.interval, t.color)))


def tiling_of_orbit(tree: RootedTree, orbit: Orbit) -> Tiling:
    """Build the cylinder tiling of an orbit (column 0 = representative)."""
    c = orbit.size
    offsets: dict[tuple[tuple[int, int], int], list[int]] = {}
    for t, antichain in enumerate(orbit.antichains):
        for x in antichain:
            info = tree.branch_of.get(x)
            if info is None:
                raise ValueError(f"orbit inconsistent with tree: unknown node {x}")
            iv, j = info
            beta = tree.interval_specs[iv].beta
            # x sits at offset beta - j inside its tile (bottom of the
            # branch occupies the tile's first column).
            offset = beta - j
            start = (t - offset) % c
            offsets.setdefault((iv, start), []).append(offset)
    tiles: list[Tile] = []
    covered: dict[tuple[int, int], bool] = {}
    for (iv, start), offs in offsets.items():
        beta = tree.interval_specs[iv].beta
        if sorted(offs) != list(range(beta)):
            raise ValueError(
                f"orbit inconsistent with tree: fragmentary {iv}-tile at column {start}"
            )
        tiles.append(Tile(BLACK, iv, start, beta))
        for col in range(start, start + beta):
            for row in range(iv[0], iv[1] + 1):
                cell = (row, col % c)
                if cell in covered:
                    raise ValueError(f"orbit inconsistent with tree: cell {cell} doubly covered")
                covered[cell] = True
    for col in range(c):
        for row in range(1, tree.n_leaves + 1):
            if (row, col) not in covered:
                tiles.append(Tile(YELLOW, (row, row), col, 1))
    return Tiling(tree, c, _sorted_tiles(tiles))


def validate_tiling(tree: RootedTree, tiling: Tiling) -> TilingReport:
    """Check shapes, exact cover, and the two succession rules.

    Violations are reported, not raised; the first one found (in a fixed
    scan order) is named in the report.
    """
    c = tiling.columns
    n = tree.n_leaves
    if c < 1:
        return TilingReport(False, "tiling must have at least one column")

    cell: dict[tuple[int, int], Tile] = {}
    for tile in tiling.tiles:
        lo, hi = tile.interval
        if tile.color not in (BLACK, YELLOW):
            return TilingReport(False, f"unknown color {tile.color!r}")
        if not (1 <= lo <= hi <= n):
            return TilingReport(False, f"tile rows {tile.interval} out of range")
        if not (0 <= tile.start < c):
            return TilingReport(False, f"tile start {tile.start} out of range")
        if tile.width < 1 or tile.width > c:
            return TilingReport(False, f"tile width {tile.width} out of range")
        if tile.color == YELLOW and (lo != hi or tile.width != 1):
            return TilingReport(False, f"yellow tile at {tile.start} is not 1x1")
        if tile.color == BLACK:
            spec = tree.interval_specs.get(tile.interval)
            if spec is None:
                return TilingReport(
                    False, f"{tile.interval} is not an interval of the tree"
                )
            if tile.width != spec.beta:
                return TilingReport(
                    False,
                    f"{tile.interval}-tile at column {tile.start} has width "
                    f"{tile.width}, expected {spec.beta}",
                )
        for col in tile.columns(c):
            for row in range(lo, hi + 1):
                if (row, col) in cell:
                    return TilingReport(False, f"cell {(row, col)} covered twice")
                cell[(row, col)] = tile
    if len(cell) != n * c:
        missing = next(
            (r, t) for t in range(c) for r in range(1, n + 1) if (r, t) not in cell
        )
        return TilingReport(False, f"cell {missing} not covered")

    def black_block_starts_at(iv: tuple[int, int], col: int) -> bool:
        t = cell[(iv[0], col)]
        return t.color == BLACK and t.interval == iv and t.start == col

    # Rule for black tiles: a singleton-interval tile is followed by a
    # yellow cell; a wider one by the maximal proper partition of its
    # interval, all starting in the next column.
    for tile in _sorted_tiles(t for t in tiling.tiles if t.color == BLACK):
        lo, hi = tile.interval
        nxt = (tile.start + tile.width) % c
        if lo == hi:
            if cell[(lo, nxt)].color != YELLOW:
                return TilingReport(
                    False,
                    f"{tile.interval}-tile ending before column {nxt} "
                    "is not followed by a yellow tile",
                )
        else:
            for block in interval_partition(tree, tile.interval, proper=True):
                if not black_block_starts_at(block, nxt):
                    return TilingReport(
                        False,
                        f"{tile.interval}-tile ending before column {nxt} is not "
                        f"followed by a {block}-tile starting there",
                    )
    # Rule for yellow runs: each maximal vertical run of yellow cells is
    # followed by the maximal partition of its row interval.
    for col in range(c):
        row = 1
        while row <= n:
            if cell[(row, col)].color != YELLOW:
                row += 1
                continue
            top = row
            while row <= n and cell[(row, col)].color == YELLOW:
                row += 1
            run = (top, row - 1)
            nxt = (col + 1) % c
            for block in interval_partition(tree, run, proper=False):
                if not black_block_starts_at(block, nxt):
                    return TilingReport(
                        False,
                        f"yellow run {run} in column {col} is not followed "
                        f"by a {block}-tile starting at column {nxt}",
                    )
    return TilingReport(True)


def orbit_of_tiling(tree: RootedTree, tiling: Tiling) -> Orbit:
    """Invert :func:`tiling_of_orbit` (up to the canonical rotation).

    The tiling is validated first; reconstruction then reads each column,
    mapping the ``o``-th column of a black tile to the ``o``-th smallest
    branch element.  A final rowmotion-consistency pass rejects anything
    that slipped past the local rules (e.g. a cylinder that repeats a
    smaller orbit more than once).
    """
    report = validate_tiling(tree, tiling)
    if not report.ok:
        raise ValueError(f"invalid tiling: {report.violation}")
    c = tiling.columns
    cols: list[set[int]] = [set() for _ in range(c)]
    for tile in tiling.tiles:
        if tile.color != BLACK:
            continue
        nodes = tree.interval_specs[tile.interval].nodes  # deepest first
        for o, col in enumerate(tile.columns(c)):
            cols[col].add(nodes[tile.width - o - 1])
    masks = [sum(1 << x for x in members) for members in cols]
    for t, m in enumerate(masks):
        if _rho_mask(tree, m) != masks[(t + 1) % c]:
            raise ValueError(
                f"invalid tiling: column {t} does not step to column {(t + 1) % c}"
            )
    if len(set(masks)) != c:
        raise ValueError("invalid tiling: repeats a smaller orbit")
    return Orbit.from_cycle([frozenset(members) for members in cols])


def tile_counts(tiling: Tiling) -> dict[tuple[int, int], tuple[int, int]]:
    """Per interval ``I``: (number of I-tiles, columns meeting tiles of
    strictly nested intervals)."""
    tree = tiling.tree
    c = tiling.columns
    per_column: list[set[tuple[int, int]]] = [set() for _ in range(c)]
    m_counts = {iv: 0 for iv in tree.interval_specs}
    for tile in tiling.tiles:
        if tile.color != BLACK:
            continue
        m_counts[tile.interval] += 1
        for col in tile.columns(c):
            per_column[col].add(tile.interval)
    out: dict[tuple[int, int], tuple[int, int]] = {}
    for lo, hi in tree.interval_specs:
        cols = sum(
            1
            for present in per_column
            if any(
                jlo >= lo and jhi <= hi and (jlo, jhi) != (lo, hi)
                for jlo, jhi in present
            )
        )
        out[(lo, hi)] = (m_counts[(lo, hi)], cols)
    return out


def render_tiling(tiling: Tiling, format: str = "ascii") -> str:
    if format == "ascii":
        return _render_ascii(tiling)
    if format == "svg":
        return _render_svg(tiling)
    raise ValueError(f"unsupported render format {format!r}")


def _cell_map(tiling: Tiling) -> dict[tuple[int, int], Tile]:
    cell = {}
    for tile in tiling.tiles:
        for col in tile.columns(tiling.columns):
            for row in range(tile.interval[0], tile.interval[1] + 1):
                cell[(row, col)] = tile
    return cell


def _render_ascii(tiling: Tiling) -> str:
    """One char per cell ('#' black, '.' yellow); '|' separates tiles,
    spaces join cells of one tile; '<'/'>' mark tiles crossing the seam."""
    c = tiling.columns
    cell = _cell_map(tiling)
    lines = []
    for row in range(1, tiling.rows + 1):
        def wraps(tile: Tile) -> bool:
            return tile.start + tile.width > c

        first = cell[(row, 0)]
        last = cell[(row, c - 1)]
        chars = ["<" if wraps(first) and first.start != 0 else "|"]
        for col in range(c):
            tile = cell[(row, col)]
            chars.append("#" if tile.color == BLACK else ".")
            if col + 1 < c:
                chars.append(" " if cell[(row, col + 1)] is tile else "|")
        chars.append(">" if wraps(last) else "|")
        lines.append("".join(chars))
    return "\n".join(lines) + "\n"


def _render_svg(tiling: Tiling) -> str:
    """Deterministic SVG; seam-crossing tiles protrude half a cell."""
    size = 20
    pad = size // 2
    c = tiling.columns
    width = c * size + 2 * pad
    height = tiling.rows * size + 2 * pad
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    ]
    parts.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>')

    def rect(col: float, row: int, w: float, h: int, fill: str) -> str:
        return (
            f'<rect x="{pad + col * size:g}" y="{pad + (row - 1) * size}" '
            f'width="{w * size:g}" height="{h * size}" '
            f'fill="{fill}" stroke="black" stroke-width="1"/>'
        )

    for tile in _sorted_tiles(tiling.tiles):
        fill = "#444444" if tile.color == BLACK else "#ffeeaa"
        h = tile.interval[1] - tile.interval[0] + 1
        if tile.start + tile.width <= c:
            parts.append(rect(tile.start, tile.interval[0], tile.width, h, fill))
        else:
            head = c - tile.start  # columns before the seam
            parts.append(rect(tile.start, tile.interval[0], head + 0.5, h, fill))
            parts.append(rect(-0.5, tile.interval[0], tile.width - head + 0.5, h, fill))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
