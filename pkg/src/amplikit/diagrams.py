"""Le-diagrams, decorated permutations, plabic graphs, and their bijections.

Conventions: rows and columns of a diagram are 1-based, row 1 at the top.
A diagram of type (k, n) lives in the k x (n-k) box; the southeast border
of its shape is a lattice path of n steps labeled 1..n from the northeast
corner of the box to the southwest corner.  Row i contributes the vertical
step labeled v_i = (n-k) - shape[i] + i and column j the horizontal step
labeled h_j = shape'[j] + (n-k-j) + 1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

from .exactlin import Subspace, frac
from .positroid import Matroid

PLUS = "+"
ZERO = "0"

MAX_ENUMERATION_N = 9


@dataclass(frozen=True, order=True)
class LeDiagram:
    """A {0,+}-filled Young diagram in the k x (n-k) box satisfying the
    Le-property: no 0 has a + above it in its column and a + to its left
    in its row."""

    k: int
    n: int
    fill: tuple  # k strings over "0+", row i has length shape[i]

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError("need 0 <= k <= n")
        if len(self.fill) != self.k:
            raise ValueError(f"need {self.k} rows, got {len(self.fill)}")
        shape = self.shape
        width = self.n - self.k
        if any(not 0 <= l <= width for l in shape):
            raise ValueError(f"shape {shape} leaves the {self.k}x{width} box")
        if any(shape[i] < shape[i + 1] for i in range(self.k - 1)):
            raise ValueError(f"shape {shape} is not weakly decreasing")
        if any(c not in (PLUS, ZERO) for row in self.fill for c in row):
            raise ValueError("fill entries must be '0' or '+'")
        for (i, j) in self.boxes():
            if self.entry(i, j) == ZERO and self._plus_above(i, j) and self._plus_left(i, j):
                raise ValueError(f"Le-property fails at box ({i},{j})")

    @classmethod
    def from_rows(cls, k: int, n: int, rows: Iterable[str]) -> "LeDiagram":
        return cls(k=k, n=n, fill=tuple(rows))

    @classmethod
    def from_shape(cls, k: int, n: int, shape: Sequence[int], plus_boxes: Iterable = ()) -> "LeDiagram":
        shape = tuple(shape) + (0,) * (k - len(shape))
        plus = set((i, j) for i, j in plus_boxes)
        rows = tuple(
            "".join(PLUS if (i, j) in plus else ZERO for j in range(1, shape[i - 1] + 1))
            for i in range(1, k + 1)
        )
        return cls(k=k, n=n, fill=rows)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(row) for row in self.fill)

    def conjugate_shape(self) -> Tuple[int, ...]:
        shape = self.shape
        return tuple(sum(1 for l in shape if l >= j) for j in range(1, self.n - self.k + 1))

    def entry(self, i: int, j: int) -> str:
        return self.fill[i - 1][j - 1]

    def boxes(self):
        for i, row in enumerate(self.fill, start=1):
            for j in range(1, len(row) + 1):
                yield (i, j)

    def plus_boxes(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((i, j) for (i, j) in self.boxes() if self.entry(i, j) == PLUS)

    def num_plus(self) -> int:
        return len(self.plus_boxes())

    def _plus_above(self, i: int, j: int) -> bool:
        return any(self.entry(r, j) == PLUS for r in range(1, i))

    def _plus_left(self, i: int, j: int) -> bool:
        return any(self.entry(i, c) == PLUS for c in range(1, j))

    def _plus_right(self, i: int, j: int) -> bool:
        return any(self.entry(i, c) == PLUS for c in range(j + 1, len(self.fill[i - 1]) + 1))

    # --- border labels ---

    def vertical_labels(self) -> Tuple[int, ...]:
        """Label of the vertical border step of each row, top to bottom."""
        shape = self.shape
        w = self.n - self.k
        return tuple(w - shape[i - 1] + i for i in range(1, self.k + 1))

    def horizontal_labels(self) -> Tuple[int, ...]:
        """Label of the horizontal border step of each column, left to right."""
        conj = self.conjugate_shape()
        w = self.n - self.k
        return tuple(conj[j - 1] + (w - j) + 1 for j in range(1, w + 1))

    def row_of_label(self, label: int) -> Optional[int]:
        for i, v in enumerate(self.vertical_labels(), start=1):
            if v == label:
                return i
        return None

    def column_of_label(self, label: int) -> Optional[int]:
        for j, h in enumerate(self.horizontal_labels(), start=1):
            if h == label:
                return j
        return None

    # --- loops and coloops (matroid language) ---

    def loops(self) -> frozenset:
        """Labels of all-zero columns."""
        hl = self.horizontal_labels()
        conj = self.conjugate_shape()
        out = set()
        for j in range(1, self.n - self.k + 1):
            if all(self.entry(i, j) == ZERO for i in range(1, conj[j - 1] + 1)):
                out.add(hl[j - 1])
        return frozenset(out)

    def coloops(self) -> frozenset:
        """Labels of all-zero rows (empty rows included)."""
        vl = self.vertical_labels()
        return frozenset(
            vl[i - 1]
            for i in range(1, self.k + 1)
            if PLUS not in self.fill[i - 1]
        )

    def to_json(self):
        return {"k": self.k, "n": self.n, "shape": list(self.shape), "fill": list(self.fill)}

    @classmethod
    def from_json(cls, data) -> "LeDiagram":
        fill = tuple(data["fill"])
        k, n = data["k"], data["n"]
        if len(fill) < k:
            fill = fill + ("",) * (k - len(fill))
        if "shape" in data:
            want = tuple(data["shape"]) + (0,) * (k - len(data["shape"]))
            if tuple(len(r) for r in fill) != want:
                raise ValueError("shape and fill disagree")
        return cls(k=k, n=n, fill=fill)


@dataclass(frozen=True, order=True)
class DecoratedPermutation:
    """A bijection of [n] whose fixed points are colored black or white."""

    images: tuple  # images[i-1] = pi(i), 1-based values
    white_fixed: frozenset

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"{self.images} is not a permutation of [{n}]")
        fixed = {i for i in range(1, n + 1) if self.images[i - 1] == i}
        if not set(self.white_fixed) <= fixed:
            raise ValueError("white_fixed must be fixed points")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def fixed_points(self) -> frozenset:
        return frozenset(i for i in range(1, self.n + 1) if self(i) == i)

    def black_fixed(self) -> frozenset:
        return self.fixed_points() - self.white_fixed

    def inverse_images(self) -> Tuple[int, ...]:
        inv = [0] * self.n
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return tuple(inv)

    def anti_excedances(self) -> frozenset:
        inv = self.inverse_images()
        out = {i for i in range(1, self.n + 1) if inv[i - 1] > i}
        return frozenset(out | set(self.white_fixed))

    def num_anti_excedances(self) -> int:
        return len(self.anti_excedances())

    def inversions(self) -> int:
        return sum(
            1
            for a, b in itertools.combinations(range(self.n), 2)
            if self.images[a] > self.images[b]
        )

    def cycles(self) -> Tuple[Tuple[int, ...], ...]:
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            cur = self(start)
            while cur != start:
                cyc.append(cur)
                seen.add(cur)
                cur = self(cur)
            out.append(tuple(cyc))
        return tuple(out)

    def __str__(self) -> str:
        parts = []
        for i in range(1, self.n + 1):
            img = self(i)
            if img == i:
                parts.append(f"{i}w" if i in self.white_fixed else f"{i}b")
            else:
                parts.append(str(img))
        return "(" + ",".join(parts) + ")"

    def to_json(self):
        return {"images": list(self.images), "white_fixed": sorted(self.white_fixed)}

    @classmethod
    def from_json(cls, data) -> "DecoratedPermutation":
        return cls(images=tuple(data["images"]), white_fixed=frozenset(data.get("white_fixed", ())))


def simple_transposition(n: int, j: int) -> Tuple[int, ...]:
    """The images tuple of s_j swapping j and j+1."""
    images = list(range(1, n + 1))
    images[j - 1], images[j] = images[j], images[j - 1]
    return tuple(images)


# --- the pipe dream bijection ---

def le_to_permutation(d: LeDiagram) -> DecoratedPermutation:
    """Trip permutation of the pipe dream: + is an elbow joining east-north
    and south-west, 0 is a crossing; pipes run from the southeast border to
    the northwest border."""
    vl = d.vertical_labels()
    hl = d.horizontal_labels()
    shape = d.shape
    conj = d.conjugate_shape()
    images = [0] * d.n
    white = set()

    def run(i: int, j: int, heading: str) -> int:
        # heading "W": moving west; "N": moving north
        while True:
            if d.entry(i, j) == PLUS:
                heading = "N" if heading == "W" else "W"
            if heading == "W":
                j -= 1
                if j == 0:
                    return vl[i - 1]
            else:
                i -= 1
                if i == 0:
                    return hl[j - 1]

    for i in range(1, d.k + 1):
        start = vl[i - 1]
        if shape[i - 1] == 0:
            images[start - 1] = start
            white.add(start)
        else:
            end = run(i, shape[i - 1], "W")
            images[start - 1] = end
            if end == start:
                white.add(start)
    for j in range(1, d.n - d.k + 1):
        start = hl[j - 1]
        if conj[j - 1] == 0:
            images[start - 1] = start
        else:
            images[start - 1] = run(conj[j - 1], j, "N")
    pi = DecoratedPermutation(images=tuple(images), white_fixed=frozenset(white))
    return pi


def shape_from_anti_excedances(n: int, aes: Sequence[int]) -> Tuple[int, ...]:
    """Shape whose vertical border steps carry exactly the given labels."""
    k = len(aes)
    vs = sorted(aes)
    shape = tuple((n - k) + i - v for i, v in enumerate(vs, start=1))
    if any(l < 0 or l > n - k for l in shape) or any(
        shape[i] < shape[i + 1] for i in range(k - 1)
    ):
        raise ValueError(f"labels {vs} are not the vertical steps of a shape")
    return shape


def _le_fills(k: int, n: int, shape: Sequence[int]) -> Iterator[LeDiagram]:
    """All Le-fills of a fixed shape, generated with the Le-property
    enforced during construction."""
    shape = tuple(shape)
    rows: list = []

    def build(i: int, cols_with_plus: set) -> Iterator[LeDiagram]:
        if i > k:
            yield LeDiagram(k=k, n=n, fill=tuple(rows))
            return
        length = shape[i - 1]

        def fill_row(j: int, row: list, has_plus_left: bool) -> Iterator[LeDiagram]:
            if j > length:
                rows.append("".join(row))
                new_cols = cols_with_plus | {c + 1 for c, ch in enumerate(row) if ch == PLUS}
                yield from build(i + 1, new_cols)
                rows.pop()
                return
            if not (has_plus_left and j in cols_with_plus):
                row.append(ZERO)
                yield from fill_row(j + 1, row, has_plus_left)
                row.pop()
            row.append(PLUS)
            yield from fill_row(j + 1, row, True)
            row.pop()

        yield from fill_row(1, [], False)

    yield from build(1, set())


def permutation_to_le(pi: DecoratedPermutation, k: Optional[int] = None) -> LeDiagram:
    """Inverse of the pipe dream bijection.

    The shape is forced: its vertical border steps are the anti-excedances.
    The fill is found by searching the Le-fills of that shape for the one
    whose trip permutation matches; the bijection guarantees uniqueness.
    """
    aes = pi.anti_excedances()
    if k is not None and len(aes) != k:
        raise ValueError(f"permutation has {len(aes)} anti-excedances, expected {k}")
    k = len(aes)
    shape = shape_from_anti_excedances(pi.n, sorted(aes))
    for d in _le_fills(k, pi.n, shape):
        if le_to_permutation(d) == pi:
            return d
    raise ValueError(f"no Le-diagram realizes {pi}")


def enumerate_le_diagrams(k: int, n: int) -> Iterator[LeDiagram]:
    """All Le-diagrams of type (k, n), i.e. all cells of the nonnegative
    Grassmannian."""
    if n > MAX_ENUMERATION_N:
        raise ValueError(f"n={n} exceeds enumeration bound {MAX_ENUMERATION_N}")
    w = n - k
    for shape in _partitions_in_box(k, w):
        yield from _le_fills(k, n, shape)


def _partitions_in_box(k: int, w: int) -> Iterator[Tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for first in range(w, -1, -1):
        for rest in _partitions_in_box(k - 1, first):
            yield (first,) + rest


def enumerate_decorated_permutations(n: int, k: int) -> Iterator[DecoratedPermutation]:
    """All decorated permutations of [n] with exactly k anti-excedances."""
    if n > MAX_ENUMERATION_N:
        raise ValueError(f"n={n} exceeds enumeration bound {MAX_ENUMERATION_N}")
    for images in itertools.permutations(range(1, n + 1)):
        pi0 = DecoratedPermutation(images=images, white_fixed=frozenset())
        base = len(pi0.anti_excedances())
        fixed = sorted(pi0.fixed_points())
        need = k - base
        if need < 0 or need > len(fixed):
            continue
        for whites in itertools.combinations(fixed, need):
            yield DecoratedPermutation(images=images, white_fixed=frozenset(whites))


# --- plabic graphs ---

@dataclass(frozen=True)
class PlabicGraph:
    """Planar bicolored graph in a disk with an explicit rotation system.

    Boundary vertices are the integers 1..n; internal vertices are string
    names.  ``rotations`` lists each vertex's neighbors in counterclockwise
    order, which is all the trip rules need.
    """

    n: int
    colors: tuple  # ((name, "black"|"white"), ...) for internal vertices
    rotations: tuple  # ((vertex, (neighbor, ...)), ...) for every vertex

    def color_map(self) -> Dict:
        return dict(self.colors)

    def rotation_map(self) -> Dict:
        return dict(self.rotations)

    def edges(self) -> frozenset:
        out = set()
        for v, nbrs in self.rotations:
            for u in nbrs:
                out.add(frozenset((v, u)))
        return frozenset(out)

    def degree(self, v) -> int:
        return len(self.rotation_map()[v])

    def to_dot(self) -> str:
        lines = ["graph plabic {"]
        for b in range(1, self.n + 1):
            lines.append(f'  "{b}" [shape=plaintext];')
        for name, color in sorted(self.colors):
            fill = "black" if color == "black" else "white"
            lines.append(
                f'  "{name}" [shape=circle, style=filled, fillcolor={fill}, label=""];'
            )
        for e in sorted(tuple(sorted(map(str, edge))) for edge in self.edges()):
            lines.append(f'  "{e[0]}" -- "{e[1]}";')
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class PerfectOrientation:
    """An edge orientation with one outgoing edge per black vertex and one
    incoming edge per white vertex; ``source_set`` collects the boundary
    vertices whose edge points into the graph."""

    graph: PlabicGraph
    directed_edges: frozenset  # of (tail, head) pairs
    source_set: frozenset

    def __post_init__(self):
        colors = self.graph.color_map()
        out_count = {v: 0 for v in colors}
        in_count = {v: 0 for v in colors}
        for tail, head in self.directed_edges:
            if tail in out_count:
                out_count[tail] += 1
            if head in in_count:
                in_count[head] += 1
        for v, color in colors.items():
            if color == "black" and out_count[v] != 1:
                raise ValueError(f"black vertex {v} has {out_count[v]} outgoing edges")
            if color == "white" and in_count[v] != 1:
                raise ValueError(f"white vertex {v} has {in_count[v]} incoming edges")


def le_to_plabic(d: LeDiagram) -> PlabicGraph:
    """Plabic graph of a Le-diagram.

    Each + becomes a black vertex (carrying the edges toward the east and
    north) paired with a white vertex (edges toward the south and west);
    all-zero rows and columns become white and black lollipops.  The
    Le-property is exactly what makes the row and column wires non-crossing,
    so the rotation system below is a planar embedding.
    """
    vl = d.vertical_labels()
    hl = d.horizontal_labels()
    conj = d.conjugate_shape()
    shape = d.shape
    plus_in_row = {i: sorted(j for (r, j) in d.plus_boxes() if r == i) for i in range(1, d.k + 1)}
    plus_in_col = {
        j: sorted(i for (i, c) in d.plus_boxes() if c == j) for j in range(1, d.n - d.k + 1)
    }

    def black(i, j):
        return f"b{i}_{j}"

    def white(i, j):
        return f"w{i}_{j}"

    colors = []
    rotations = {}

    for (i, j) in d.plus_boxes():
        colors.append((black(i, j), "black"))
        colors.append((white(i, j), "white"))
        east_plus = [c for c in plus_in_row[i] if c > j]
        west_plus = [c for c in plus_in_row[i] if c < j]
        north_plus = [r for r in plus_in_col[j] if r < i]
        south_plus = [r for r in plus_in_col[j] if r > i]
        e_nbr = white(i, min(east_plus)) if east_plus else vl[i - 1]
        n_nbr = white(min(north_plus, default=0), j) if north_plus else None
        if north_plus:
            n_nbr = white(max(north_plus), j)
        w_nbr = black(i, max(west_plus)) if west_plus else None
        s_nbr = black(min(south_plus), j) if south_plus else hl[j - 1]
        # counterclockwise orders derived from the local geometry:
        # black at the box's northeast holds (E, N, connector); white at the
        # southwest holds (connector, W, S)
        rot_b = [e_nbr] + ([n_nbr] if n_nbr else []) + [white(i, j)]
        rot_w = [black(i, j)] + ([w_nbr] if w_nbr else []) + [s_nbr]
        rotations[black(i, j)] = tuple(rot_b)
        rotations[white(i, j)] = tuple(rot_w)

    for i in range(1, d.k + 1):
        label = vl[i - 1]
        if plus_in_row[i]:
            rotations[label] = (black(i, max(plus_in_row[i])),)
        else:
            lol = f"lw{i}"
            colors.append((lol, "white"))
            rotations[lol] = (label,)
            rotations[label] = (lol,)
    for j in range(1, d.n - d.k + 1):
        label = hl[j - 1]
        if plus_in_col[j]:
            rotations[label] = (white(max(plus_in_col[j]), j),)
        else:
            lol = f"lb{j}"
            colors.append((lol, "black"))
            rotations[lol] = (label,)
            rotations[label] = (lol,)

    return PlabicGraph(
        n=d.n,
        colors=tuple(sorted(colors)),
        rotations=tuple(sorted(rotations.items())),
    )


def trip_permutation(g: PlabicGraph) -> DecoratedPermutation:
    """Follow each boundary vertex's trip, turning maximally right at black
    vertices and maximally left at white ones; lollipop colors decorate the
    fixed points."""
    rot = g.rotation_map()
    colors = g.color_map()
    max_steps = 4 * sum(len(nbrs) for nbrs in rot.values()) + 4
    images = [0] * g.n
    white = set()
    for b in range(1, g.n + 1):
        prev, cur = b, rot[b][0]
        steps = 0
        while not isinstance(cur, int):
            nbrs = rot[cur]
            idx = nbrs.index(prev)
            if colors[cur] == "black":
                nxt = nbrs[(idx + 1) % len(nbrs)]  # first edge counterclockwise
            else:
                nxt = nbrs[(idx - 1) % len(nbrs)]  # first edge clockwise
            prev, cur = cur, nxt
            steps += 1
            if steps > max_steps:
                raise ValueError(f"trip from {b} does not terminate on the boundary")
        images[b - 1] = cur
        if cur == b:
            nbr = rot[b][0]
            if colors.get(nbr) == "white":
                white.add(b)
    return DecoratedPermutation(images=tuple(images), white_fixed=frozenset(white))


def down_left_orientation(d: LeDiagram) -> PerfectOrientation:
    """Perfect orientation of le_to_plabic(d) with every edge pointing down
    or to the left; its sources are the vertical step labels."""
    g = le_to_plabic(d)
    vl = set(d.vertical_labels())
    directed = set()
    rot = g.rotation_map()
    colors = g.color_map()
    for edge in g.edges():
        u, v = tuple(edge)
        directed.add(_down_left_direction(u, v, vl, colors))
    sources = frozenset(
        b for b in range(1, g.n + 1) if any(t == b for t, _ in directed)
    )
    return PerfectOrientation(graph=g, directed_edges=frozenset(directed), source_set=sources)


def _down_left_direction(u, v, vertical_labels, colors):
    def rank(x):
        # flow order: boundary row labels -> black -> white -> boundary column labels
        if isinstance(x, int):
            return 0 if x in vertical_labels else 3
        if x.startswith("lw"):
            return 2
        if x.startswith("lb"):
            return 1
        return 1 if colors[x] == "black" else 2

    ru, rv = rank(u), rank(v)
    if ru == rv == 1:  # column edge white->black is the only same-rank case
        raise AssertionError("unexpected edge")
    if ru < rv:
        return (u, v)
    if rv < ru:
        return (v, u)
    raise AssertionError("unexpected edge")


def perfect_orientations(g: PlabicGraph) -> Iterator[PerfectOrientation]:
    """All perfect orientations, by backtracking over edge directions."""
    edge_list = sorted(tuple(sorted(map(str, e))) for e in g.edges())
    # recover actual endpoint objects (ints for boundary)
    def revive(name: str):
        return int(name) if name.isdigit() else name

    edge_list = [tuple(map(revive, e)) for e in edge_list]
    colors = g.color_map()
    incident = {}
    for idx, (u, v) in enumerate(edge_list):
        incident.setdefault(u, []).append(idx)
        incident.setdefault(v, []).append(idx)

    out_needed = {v: (1 if c == "black" else None) for v, c in colors.items()}
    in_needed = {v: (1 if c == "white" else None) for v, c in colors.items()}

    assignment: list = [None] * len(edge_list)
    out_count = {v: 0 for v in colors}
    in_count = {v: 0 for v in colors}
    undecided = {v: len(incident[v]) for v in colors}

    def consistent(v) -> bool:
        if v not in colors:
            return True
        if colors[v] == "black":
            return out_count[v] <= 1 and out_count[v] + undecided[v] >= 1
        return in_count[v] <= 1 and in_count[v] + undecided[v] >= 1

    results = []

    def place(idx: int):
        if idx == len(edge_list):
            results.append(tuple(assignment))
            return
        u, v = edge_list[idx]
        for tail, head in ((u, v), (v, u)):
            assignment[idx] = (tail, head)
            for x in (u, v):
                if x in colors:
                    undecided[x] -= 1
            if tail in colors:
                out_count[tail] += 1
            if head in colors:
                in_count[head] += 1
            if consistent(u) and consistent(v):
                place(idx + 1)
            if tail in colors:
                out_count[tail] -= 1
            if head in colors:
                in_count[head] -= 1
            for x in (u, v):
                if x in colors:
                    undecided[x] += 1
        assignment[idx] = None

    place(0)
    for directed in results:
        try:
            po = PerfectOrientation(
                graph=g,
                directed_edges=frozenset(directed),
                source_set=frozenset(
                    b for b in range(1, g.n + 1) if any(t == b for t, _ in directed)
                ),
            )
        except ValueError:
            continue
        yield po


def positroid_from_plabic(g: PlabicGraph) -> Matroid:
    """Positroid whose bases are the source sets of all perfect
    orientations."""
    bases = {po.source_set for po in perfect_orientations(g)}
    if not bases:
        raise ValueError("graph admits no perfect orientation")
    return Matroid(n=g.n, bases=frozenset(bases))


# --- boundary measurement ---

def cell_representative(d: LeDiagram, weights: Optional[Dict] = None) -> Subspace:
    """Boundary measurement matrix of the down-left perfect orientation.

    One row per source (vertical label), entry at a sink column j equal to
    (-1)^{#sources strictly between} times the weighted path sum; with
    positive weights (one per +, default 1) the row span realizes the cell
    of the diagram's positroid.
    """
    if weights is None:
        weights = {}
    w = {box: frac(weights.get(box, 1)) for box in d.plus_boxes()}
    if any(x <= 0 for x in w.values()):
        raise ValueError("weights must be positive")
    vl = d.vertical_labels()
    hl = d.horizontal_labels()
    plus_in_row = {i: sorted(j for (r, j) in d.plus_boxes() if r == i) for i in range(1, d.k + 1)}
    plus_in_col = {
        j: sorted(i for (i, c) in d.plus_boxes() if c == j) for j in range(1, d.n - d.k + 1)
    }

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def sums_from(i: int, j: int):
        """Map sink column -> weighted sum of paths from the + at (i, j)."""
        out: Dict[int, Fraction] = {}
        west = [c for c in plus_in_row[i] if c < j]
        south = [r for r in plus_in_col[j] if r > i]
        targets = []
        if west:
            targets.append(sums_from(i, max(west)))
        if south:
            targets.append(sums_from(min(south), j))
        else:
            out[j] = Fraction(1)
        for t in targets:
            for col, val in t.items():
                out[col] = out.get(col, Fraction(0)) + val
        return {col: w[(i, j)] * val for col, val in out.items()}

    rows = []
    for i in range(1, d.k + 1):
        source = vl[i - 1]
        row = [Fraction(0)] * d.n
        row[source - 1] = Fraction(1)
        if plus_in_row[i]:
            entry = sums_from(i, max(plus_in_row[i]))
            for col, val in entry.items():
                sink = hl[col - 1]
                between = sum(1 for v in vl if source < v < sink)
                row[sink - 1] = (-1) ** between * val
        rows.append(tuple(row))
    if d.k == 0:
        return Subspace.from_rows([], n=d.n)
    return Subspace.from_rows(rows, n=d.n)


# --- the m=1 BCFW family and relatives ---

def bcfw_cells(n: int, k: int):
    """Le-diagrams whose k rows each carry one + at the far right; these
    index the m=1 BCFW cells and number C(n-1, k)."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"need 0 <= k <= n-1, got n={n}, k={k}")
    out = []
    for shape in _partitions_in_box(k, n - k):
        if k > 0 and shape[-1] == 0:
            continue
        out.append(
            LeDiagram.from_shape(k, n, shape, plus_boxes=[(i, shape[i - 1]) for i in range(1, k + 1)])
        )
    return out


FAMILIES = ("D", "Dbar", "L", "Lbar")


def in_family(d: LeDiagram, family: str) -> bool:
    """Membership in the BCFW diagram families."""
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}")
    rows_plus = [sorted(j for (r, j) in d.plus_boxes() if r == i) for i in range(1, d.k + 1)]
    if any(len(p) > 1 for p in rows_plus):
        return False
    if family in ("D", "Dbar"):
        shape = d.shape
        for i, p in enumerate(rows_plus, start=1):
            if p and p[0] != shape[i - 1]:
                return False
            if family == "D" and not p:
                return False
        return True
    # L-condition: no 0 with a + above it in its column and a + to its
    # right in its row
    for (i, j) in d.boxes():
        if d.entry(i, j) == ZERO and d._plus_above(i, j) and d._plus_right(i, j):
            return False
    if family == "L" and any(not p for p in rows_plus):
        return False
    return True


def slide(d: LeDiagram) -> frozenset:
    """All diagrams obtained by sliding each + weakly to the right onto the
    southeast border, truncating its row, and optionally deleting the
    landing box; the result lies in the closed BCFW family."""
    if not in_family(d, "Lbar"):
        raise ValueError("slide requires a diagram in the closed L family")
    shape = d.shape

    def lam(i: int) -> int:
        return shape[i - 1] if i <= d.k else 0

    options = []
    for i in range(1, d.k + 1):
        pluses = [j for (r, j) in d.plus_boxes() if r == i]
        if not pluses:
            options.append([(lam(i), None)])
            continue
        j = pluses[0]
        row_opts = []
        for j2 in range(max(j, lam(i + 1)), lam(i) + 1):
            row_opts.append((j2, j2))
            if j2 != j and lam(i + 1) <= j2 - 1:
                row_opts.append((j2 - 1, None))
        options.append(row_opts)

    out = set()
    for combo in itertools.product(*options):
        lengths = [c[0] for c in combo]
        plus_boxes = [(i, c[1]) for i, c in enumerate(combo, start=1) if c[1] is not None]
        d2 = LeDiagram.from_shape(d.k, d.n, lengths, plus_boxes)
        if not in_family(d2, "Dbar"):
            raise AssertionError("slide left the closed BCFW family")
        out.add(d2)
    return frozenset(out)


def cover_relations(d: LeDiagram) -> frozenset:
    """Diagrams covered by d in the closed BCFW family poset: delete the
    column tail under a bottom-most + (type 1) or turn a + into 0
    (type 2)."""
    if not in_family(d, "Dbar"):
        raise ValueError("cover relations are defined on the closed BCFW family")
    shape = d.shape
    out = set()
    for (i, j) in d.plus_boxes():
        below = [r for r in range(i + 1, d.k + 1) if shape[r - 1] == j and PLUS in d.fill[r - 1]]
        if not below:
            lengths = list(shape)
            for r in range(i, d.k + 1):
                if lengths[r - 1] == j:
                    lengths[r - 1] = j - 1
            plus = [(r, c) for (r, c) in d.plus_boxes() if r != i]
            out.add(LeDiagram.from_shape(d.k, d.n, lengths, plus))
        plus = [(r, c) for (r, c) in d.plus_boxes() if (r, c) != (i, j)]
        out.add(LeDiagram.from_shape(d.k, d.n, shape, plus))
    return frozenset(out)


def enumerate_dbar(n: int, k: int) -> Iterator[LeDiagram]:
    """All diagrams in the closed BCFW family of type (k, n)."""
    for shape in _partitions_in_box(k, n - k):
        rows_with_box = [i for i in range(1, k + 1) if shape[i - 1] > 0]
        for subset in itertools.chain.from_iterable(
            itertools.combinations(rows_with_box, r) for r in range(len(rows_with_box) + 1)
        ):
            yield LeDiagram.from_shape(k, n, shape, [(i, shape[i - 1]) for i in subset])


def enumerate_lbar(n: int, k: int) -> Iterator[LeDiagram]:
    """All diagrams in the closed L family of type (k, n)."""
    for d in enumerate_le_diagrams(k, n):
        if in_family(d, "Lbar"):
            yield d
