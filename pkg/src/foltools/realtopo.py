"""Real ovals of plane curves: certified counting and numeric tracing.

Topology comes from exact signs: grid nodes are rational, every sign
decision is integer arithmetic (vectorized in int64 when a proven bound
says it cannot overflow, arbitrary-precision otherwise).  Floating point
only places vertices inside cells.  Ambiguous cells are resolved by
subdivision with exact signs, never by a midpoint heuristic; when depth
runs out the affected ovals are reported uncertified with a warning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dfield
from fractions import Fraction

import numpy as np

from .errors import DegenerateInput, PreconditionError
from .polyring import MultiPoly, leading_form
from .uniroots import count_real_roots

MAX_SUBDIVISION_DEPTH = 6
_INT64_SAFE = 1 << 62


# -- rational boxes ----------------------------------------------------------------


@dataclass(frozen=True)
class Box:
    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction

    @staticmethod
    def square(b) -> "Box":
        b = Fraction(b)
        return Box(-b, b, -b, b)

    def to_dict(self) -> dict:
        return {
            "x_lo": str(self.x_lo),
            "x_hi": str(self.x_hi),
            "y_lo": str(self.y_lo),
            "y_hi": str(self.y_hi),
        }


@dataclass
class Oval:
    vertices: list[tuple[float, float]]
    certified: bool

    def to_dict(self) -> dict:
        return {"vertex_count": len(self.vertices), "certified": self.certified}


@dataclass
class OvalSet:
    box: Box
    resolution: int
    ovals: list[Oval] = dfield(default_factory=list)
    warnings: list[str] = dfield(default_factory=list)
    open_chains: int = 0

    @property
    def count(self) -> int:
        return len(self.ovals)

    @property
    def certified_count(self) -> int:
        return sum(1 for o in self.ovals if o.certified)

    def to_dict(self) -> dict:
        return {
            "box": self.box.to_dict(),
            "resolution": self.resolution,
            "count": self.count,
            "certified_count": self.certified_count,
            "ovals": [o.to_dict() for o in self.ovals],
            "warnings": self.warnings,
            "open_chains": self.open_chains,
        }


# -- integer-scaled polynomial data --------------------------------------------------


class _IntPoly:
    """f scaled to integer coefficients; exact evaluation on lattice points.

    Lattice x_i = (ax + i*sx)/dx, y_j = (ay + j*sy)/dy.  The stored value at
    a node is f * lcm * dx^degx * dy^degy, an integer whose sign equals
    sign(f).
    """

    def __init__(self, f: MultiPoly):
        if f.arity != 2:
            raise PreconditionError("expected an affine curve")
        if not f.has_real_coefficients():
            raise PreconditionError("real coefficients required")
        self.degx = max((e[0] for e in f.terms), default=0)
        self.degy = max((e[1] for e in f.terms), default=0)
        lcm = 1
        for c in f.terms.values():
            d = c.re.denominator
            lcm = lcm * d // math.gcd(lcm, d)
        self.terms = [(a, b, int(c.re * lcm)) for (a, b), c in f.terms.items()]
        self.lcm = lcm

    def row_coefficients(self, ny: int, dy_pows: list[int], dx_pows: list[int]) -> list[int]:
        """Integer Horner coefficients in the x-lattice index for one row."""
        ny_pows = [1] * (self.degy + 1)
        for k in range(1, self.degy + 1):
            ny_pows[k] = ny_pows[k - 1] * ny
        u = [0] * (self.degx + 1)
        for a, b, c in self.terms:
            u[a] += c * ny_pows[b] * dy_pows[self.degy - b]
        return [u[a] * dx_pows[self.degx - a] for a in range(self.degx + 1)]


def _lattice(lo: Fraction, hi: Fraction, n: int) -> tuple[int, int, int]:
    """(a, s, d) with node_i = (a + i*s)/d for i in 0..n."""
    step = (hi - lo) / n
    d = lo.denominator * step.denominator // math.gcd(lo.denominator, step.denominator)
    a = int(lo * d)
    s = int(step * d)
    return a, s, d


def _sign_grid(ip: _IntPoly, ax: int, sx: int, dx: int, ay: int, sy: int, dy: int, n: int):
    """Signs (and integer values) of f at the (n+1)^2 lattice nodes."""
    dx_pows = [dx**k for k in range(ip.degx + 1)]
    dy_pows = [dy**k for k in range(ip.degy + 1)]
    nx_max = max(abs(ax), abs(ax + n * sx))
    # conservative magnitude bound for the row Horner
    coef_bound = sum(abs(c) for _, _, c in ip.terms)
    ny_max = max(abs(ay), abs(ay + n * sy))
    bound = coef_bound * max(ny_max, 1) ** ip.degy * max(dy, 1) ** ip.degy
    bound *= max(dx, 1) ** ip.degx
    bound *= max(nx_max, 1) ** ip.degx * (ip.degx + 1)
    use_numpy = bound < _INT64_SAFE
    signs = np.zeros((n + 1, n + 1), dtype=np.int8)  # [j][i]
    values: list[list[int]] | None = None if use_numpy else []
    nx = ax + sx * np.arange(n + 1, dtype=np.int64) if use_numpy else [ax + sx * i for i in range(n + 1)]
    float_vals = np.zeros((n + 1, n + 1), dtype=np.float64)
    scale = float(ip.lcm) * float(dx) ** ip.degx * float(dy) ** ip.degy
    for j in range(n + 1):
        w = ip.row_coefficients(ay + j * sy, dy_pows, dx_pows)
        if use_numpy:
            acc = np.full(n + 1, w[ip.degx], dtype=np.int64)
            for a in range(ip.degx - 1, -1, -1):
                acc = acc * nx + w[a]
            signs[j] = np.sign(acc)
            float_vals[j] = acc.astype(np.float64) / scale
        else:
            row_vals = []
            for i in range(n + 1):
                acc = w[ip.degx]
                x = nx[i]
                for a in range(ip.degx - 1, -1, -1):
                    acc = acc * x + w[a]
                row_vals.append(acc)
            values.append(row_vals)
            signs[j] = [0 if v == 0 else (1 if v > 0 else -1) for v in row_vals]
            float_vals[j] = [float(Fraction(v) / (ip.lcm * dx_pows[-1] * dy_pows[-1])) for v in row_vals]
    return signs, float_vals


# -- exact rational interval arithmetic ----------------------------------------------


def _interval_pow(lo: Fraction, hi: Fraction, e: int) -> tuple[Fraction, Fraction]:
    if e == 0:
        return Fraction(1), Fraction(1)
    if e % 2 == 1 or lo >= 0:
        return lo**e, hi**e
    if hi <= 0:
        return hi**e, lo**e
    return Fraction(0), max(lo**e, hi**e)


def _interval_eval(f: MultiPoly, xlo: Fraction, xhi: Fraction, ylo: Fraction, yhi: Fraction):
    lo_total, hi_total = Fraction(0), Fraction(0)
    for (a, b), c in f.terms.items():
        plo, phi = _interval_pow(xlo, xhi, a)
        qlo, qhi = _interval_pow(ylo, yhi, b)
        cands = (plo * qlo, plo * qhi, phi * qlo, phi * qhi)
        tlo, thi = min(cands), max(cands)
        cv = c.re
        if cv >= 0:
            lo_total += cv * tlo
            hi_total += cv * thi
        else:
            lo_total += cv * thi
            hi_total += cv * tlo
    return lo_total, hi_total


def _edge_restriction(f: MultiPoly, p1, p2) -> tuple[list[Fraction], Fraction, Fraction]:
    """f restricted to an axis-aligned segment, as univariate coefficients."""
    (x1, y1), (x2, y2) = p1, p2
    coeffs: dict[int, Fraction] = {}
    if y1 == y2:  # horizontal: varies in x
        for (a, b), c in f.terms.items():
            coeffs[a] = coeffs.get(a, Fraction(0)) + c.re * y1**b
        lo, hi = min(x1, x2), max(x1, x2)
    else:
        for (a, b), c in f.terms.items():
            coeffs[b] = coeffs.get(b, Fraction(0)) + c.re * x1**a
        lo, hi = min(y1, y2), max(y1, y2)
    top = max(coeffs, default=0)
    return [coeffs.get(k, Fraction(0)) for k in range(top + 1)], lo, hi


def _edge_is_zero_free(f: MultiPoly, p1, p2) -> bool:
    """Exact proof (Sturm count) that f has no zero on the segment [p1, p2].

    Endpoints are lattice nodes with nonzero exact sign, so a zero count of 0
    on the half-open interval certifies the whole closed edge.
    """
    coeffs, lo, hi = _edge_restriction(f, p1, p2)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        return False  # f vanishes identically on the edge line
    if len(coeffs) == 1:
        return bool(coeffs[0])
    return count_real_roots(coeffs, lo, hi) == 0


# -- compactness and the default box --------------------------------------------------


def compactness_check(f: MultiPoly) -> bool:
    """True iff the top-degree form has no real zero direction, which forces
    the whole real locus into a bounded region."""
    if not f.has_real_coefficients():
        raise PreconditionError("real coefficients required")
    if f.is_zero() or f.is_constant():
        raise PreconditionError("curve must be nonconstant")
    L = leading_form(f)
    coeffs: dict[int, Fraction] = {}
    degree = int(L.degree)
    for (a, b), c in L.terms.items():
        coeffs[b] = coeffs.get(b, Fraction(0)) + c.re
    restriction = [coeffs.get(k, Fraction(0)) for k in range(degree + 1)]
    vertical = restriction[-1] if len(restriction) == degree + 1 else Fraction(0)
    if not vertical:
        return False  # the direction (0 : 1) is a real zero of the top form
    while restriction and not restriction[-1]:
        restriction.pop()
    return count_real_roots(restriction) == 0


def _min_abs_on_interval(coeffs: list[Fraction], lo: Fraction, hi: Fraction, depth: int = 14) -> Fraction:
    """Positive lower bound for |poly| on [lo, hi]; poly must be zero-free there."""
    from .gaussian import GaussianRational

    terms = {(k, 0): GaussianRational(c, Fraction(0)) for k, c in enumerate(coeffs) if c}
    f_poly = MultiPoly(2, terms)

    def rec(a: Fraction, b: Fraction, d: int) -> Fraction:
        vlo, vhi = _interval_eval(f_poly, a, b, Fraction(0), Fraction(0))
        if vlo > 0:
            return vlo
        if vhi < 0:
            return -vhi
        if d == 0:
            raise DegenerateInput("could not bound the top form away from zero")
        m = (a + b) / 2
        return min(rec(a, m, d - 1), rec(m, b, d - 1))

    return rec(lo, hi, depth)


def default_box(f: MultiPoly) -> Box:
    """A rigorous bounding box: beyond it the top form dominates the rest."""
    if not compactness_check(f):
        raise PreconditionError("real locus is unbounded; supply a box explicitly")
    L = leading_form(f)
    n = int(f.degree)
    row: dict[int, Fraction] = {}
    col: dict[int, Fraction] = {}
    for (a, b), c in L.terms.items():
        row[b] = row.get(b, Fraction(0)) + c.re  # L(1, t)
        col[a] = col.get(a, Fraction(0)) + c.re  # L(t, 1)
    r1 = [row.get(k, Fraction(0)) for k in range(n + 1)]
    r2 = [col.get(k, Fraction(0)) for k in range(n + 1)]
    lam = min(
        _min_abs_on_interval(r1, Fraction(-1), Fraction(1)),
        _min_abs_on_interval(r2, Fraction(-1), Fraction(1)),
    )
    lower_mass: dict[int, Fraction] = {}
    for (a, b), c in f.terms.items():
        d = a + b
        if d < n:
            lower_mass[d] = lower_mass.get(d, Fraction(0)) + abs(c.re)
    B = Fraction(2)
    while True:
        slack = sum(mass * B**d for d, mass in lower_mass.items())
        if lam * B**n > slack:
            return Box(-B, B, -B, B)
        B *= 2
        if B > 2**40:
            raise DegenerateInput("failed to find a bounding box")


# -- marching squares -----------------------------------------------------------------

# segments per 4-bit corner sign pattern (c0=bl, c1=br, c2=tr, c3=tl; bit = negative)
_SEGMENTS = {
    1: [("B", "L")],
    2: [("B", "R")],
    3: [("L", "R")],
    4: [("R", "T")],
    6: [("B", "T")],
    7: [("L", "T")],
    8: [("L", "T")],
    9: [("B", "T")],
    11: [("R", "T")],
    12: [("L", "R")],
    13: [("B", "R")],
    14: [("B", "L")],
}
_AMBIGUOUS = (5, 10)


def _cell_edges(i: int, j: int) -> dict[str, tuple]:
    return {
        "B": ("h", i, j),
        "T": ("h", i, j + 1),
        "L": ("v", i, j),
        "R": ("v", i + 1, j),
    }


class _Mesher:
    """Extracts closed contours from exact signs on a lattice."""

    def __init__(self, f: MultiPoly, ip: _IntPoly, grids, n: int, nodes_x, nodes_y):
        self.f = f
        self.ip = ip
        self.signs, self.fvals = grids
        self.n = n
        self.nodes_x = nodes_x  # exact Fractions of lattice lines
        self.nodes_y = nodes_y
        self.segments: list[tuple] = []
        self.vertex_pos: dict[tuple, tuple[float, float]] = {}
        self.uncertified_cells: set[tuple[int, int]] = set()
        self.warnings: list[str] = []
        self.crossed_edges: set[tuple] = set()
        self._loop_cells: list[set] = []

    # ---- exact helpers

    def _exact_sign(self, x: Fraction, y: Fraction) -> int:
        v = self.f.evaluate((x, y))
        q = v.re
        return 0 if not q else (1 if q > 0 else -1)

    def _edge_vertex(self, kind: str, i: int, j: int) -> tuple:
        key = (kind, i, j)
        if key not in self.vertex_pos:
            if kind == "h":
                x1, x2 = float(self.nodes_x[i]), float(self.nodes_x[i + 1])
                y = float(self.nodes_y[j])
                v1, v2 = self.fvals[j][i], self.fvals[j][i + 1]
                t = v1 / (v1 - v2) if v1 != v2 else 0.5
                self.vertex_pos[key] = (x1 + t * (x2 - x1), y)
            else:
                y1, y2 = float(self.nodes_y[j]), float(self.nodes_y[j + 1])
                x = float(self.nodes_x[i])
                v1, v2 = self.fvals[j][i], self.fvals[j + 1][i]
                t = v1 / (v1 - v2) if v1 != v2 else 0.5
                self.vertex_pos[key] = (x, y1 + t * (y2 - y1))
        self.crossed_edges.add(key)
        return key

    # ---- cell processing

    def run(self):
        s = self.signs
        neg = s < 0
        c0 = neg[:-1, :-1]
        c1 = neg[:-1, 1:]
        c2 = neg[1:, 1:]
        c3 = neg[1:, :-1]
        case = (
            c0.astype(np.int8)
            + 2 * c1.astype(np.int8)
            + 4 * c2.astype(np.int8)
            + 8 * c3.astype(np.int8)
        )
        js, iis = np.nonzero((case != 0) & (case != 15))
        for j, i in zip(js.tolist(), iis.tolist()):
            self._process_cell(i, j, int(case[j, i]))

    def _process_cell(self, i: int, j: int, pattern: int):
        edges = _cell_edges(i, j)
        if pattern in _AMBIGUOUS:
            self._subdivide_cell(i, j)
            return
        for a, b in _SEGMENTS[pattern]:
            ka = self._edge_vertex(*edges[a])
            kb = self._edge_vertex(*edges[b])
            self.segments.append((ka, kb, (i, j)))

    # ---- ambiguous-cell subdivision

    def _subdivide_cell(self, i: int, j: int):
        x1, x2 = self.nodes_x[i], self.nodes_x[i + 1]
        y1, y2 = self.nodes_y[j], self.nodes_y[j + 1]
        for depth in range(1, MAX_SUBDIVISION_DEPTH + 1):
            m = 1 << depth
            xs = [x1 + (x2 - x1) * k / m for k in range(m + 1)]
            ys = [y1 + (y2 - y1) * k / m for k in range(m + 1)]
            sub = [[self._exact_sign(xs[a], ys[b]) for a in range(m + 1)] for b in range(m + 1)]
            if any(0 in rowv for rowv in sub):
                continue  # a finer lattice node hit the curve; deepen
            ambiguous = False
            for b in range(m):
                for a in range(m):
                    bits = (
                        (sub[b][a] < 0)
                        + 2 * (sub[b][a + 1] < 0)
                        + 4 * (sub[b + 1][a + 1] < 0)
                        + 8 * (sub[b + 1][a] < 0)
                    )
                    if bits in _AMBIGUOUS:
                        ambiguous = True
                        break
                if ambiguous:
                    break
            if not ambiguous:
                self._emit_subgrid(i, j, xs, ys, sub)
                return
        self.uncertified_cells.add((i, j))
        self.warnings.append(
            f"cell ({i},{j}) still ambiguous at depth {MAX_SUBDIVISION_DEPTH}; "
            "count may be unreliable there"
        )
        # fall back to one diagonal pairing so chains still close
        edges = _cell_edges(i, j)
        ka = self._edge_vertex(*edges["B"])
        kb = self._edge_vertex(*edges["L"])
        kc = self._edge_vertex(*edges["T"])
        kd = self._edge_vertex(*edges["R"])
        self.segments.append((ka, kb, (i, j)))
        self.segments.append((kc, kd, (i, j)))

    def _emit_subgrid(self, i: int, j: int, xs, ys, sub):
        m = len(xs) - 1
        parent_edges = _cell_edges(i, j)

        def sub_vertex(kind: str, a: int, b: int) -> tuple:
            key = ("s", i, j, kind, a, b)
            if key not in self.vertex_pos:
                if kind == "h":
                    va = self.f.evaluate((xs[a], ys[b])).re
                    vb = self.f.evaluate((xs[a + 1], ys[b])).re
                    t = float(Fraction(va, va - vb)) if va != vb else 0.5
                    self.vertex_pos[key] = (
                        float(xs[a]) + t * float(xs[a + 1] - xs[a]),
                        float(ys[b]),
                    )
                else:
                    va = self.f.evaluate((xs[a], ys[b])).re
                    vb = self.f.evaluate((xs[a], ys[b + 1])).re
                    t = float(Fraction(va, va - vb)) if va != vb else 0.5
                    self.vertex_pos[key] = (
                        float(xs[a]),
                        float(ys[b]) + t * float(ys[b + 1] - ys[b]),
                    )
            return key

        # map boundary sub-crossings to parent edges when unique, else chord-pair
        def boundary_key(kind: str, a: int, b: int) -> tuple:
            if kind == "h" and b == 0:
                side, parent = "B", parent_edges["B"]
            elif kind == "h" and b == m:
                side, parent = "T", parent_edges["T"]
            elif kind == "v" and a == 0:
                side, parent = "L", parent_edges["L"]
            elif kind == "v" and a == m:
                side, parent = "R", parent_edges["R"]
            else:
                return sub_vertex(kind, a, b)
            crossings = boundary_crossings[side]
            if len(crossings) == 1:
                return self._edge_vertex(*parent)
            return sub_vertex(kind, a, b)

        boundary_crossings = {"B": [], "T": [], "L": [], "R": []}
        for a in range(m):
            if sub[0][a] * sub[0][a + 1] < 0:
                boundary_crossings["B"].append(a)
            if sub[m][a] * sub[m][a + 1] < 0:
                boundary_crossings["T"].append(a)
            if sub[a][0] * sub[a + 1][0] < 0:
                boundary_crossings["L"].append(a)
            if sub[a][m] * sub[a + 1][m] < 0:
                boundary_crossings["R"].append(a)
        for side, parent in parent_edges.items():
            cr = boundary_crossings[side]
            if len(cr) > 1:
                self.uncertified_cells.add((i, j))
                self.warnings.append(
                    f"cell ({i},{j}): {len(cr)} crossings on one shared edge; "
                    "neighbor resolution too coarse, pairing locally"
                )

        extra_chords: list[tuple] = []
        for side, parent in parent_edges.items():
            cr = boundary_crossings[side]
            if len(cr) > 1:
                kind = "h" if side in ("B", "T") else "v"
                fixed = 0 if side in ("B", "L") else m
                keys = []
                for a in cr:
                    if kind == "h":
                        keys.append(sub_vertex("h", a, fixed))
                    else:
                        keys.append(sub_vertex("v", fixed, a))
                # leave one crossing to link with the coarse neighbor if it saw one
                start = 0
                if len(cr) % 2 == 1:
                    parent_key = self._edge_vertex(*parent)
                    extra_chords.append((keys[0], parent_key, (i, j)))
                    start = 1
                for k in range(start, len(keys) - 1, 2):
                    extra_chords.append((keys[k], keys[k + 1], (i, j)))
        self.segments.extend(extra_chords)

        for b in range(m):
            for a in range(m):
                bits = (
                    (sub[b][a] < 0)
                    + 2 * (sub[b][a + 1] < 0)
                    + 4 * (sub[b + 1][a + 1] < 0)
                    + 8 * (sub[b + 1][a] < 0)
                )
                if bits in (0, 15):
                    continue
                local = {
                    "B": ("h", a, b),
                    "T": ("h", a, b + 1),
                    "L": ("v", a, b),
                    "R": ("v", a + 1, b),
                }
                for ea, eb in _SEGMENTS[bits]:
                    ka = boundary_key(*local[ea])
                    kb = boundary_key(*local[eb])
                    self.segments.append((ka, kb, (i, j)))

    # ---- chain assembly

    def assemble(self) -> tuple[list[list[tuple]], int]:
        adjacency: dict[tuple, list[int]] = {}
        for idx, (ka, kb, _cell) in enumerate(self.segments):
            adjacency.setdefault(ka, []).append(idx)
            adjacency.setdefault(kb, []).append(idx)
        used = [False] * len(self.segments)
        loops: list[list[tuple]] = []
        open_chains = 0
        for start in range(len(self.segments)):
            if used[start]:
                continue
            chain = [self.segments[start][0], self.segments[start][1]]
            cells = {self.segments[start][2]}
            used[start] = True
            closed = False
            # extend forward from chain end
            progressing = True
            while progressing:
                progressing = False
                tail = chain[-1]
                if tail == chain[0] and len(chain) > 2:
                    closed = True
                    break
                for idx in adjacency.get(tail, []):
                    if used[idx]:
                        continue
                    ka, kb, cell = self.segments[idx]
                    used[idx] = True
                    cells.add(cell)
                    chain.append(kb if ka == tail else ka)
                    progressing = True
                    break
            if not closed:
                # try extending backwards
                progressing = True
                while progressing:
                    progressing = False
                    head = chain[0]
                    if head == chain[-1] and len(chain) > 2:
                        closed = True
                        break
                    for idx in adjacency.get(head, []):
                        if used[idx]:
                            continue
                        ka, kb, cell = self.segments[idx]
                        used[idx] = True
                        cells.add(cell)
                        chain.insert(0, kb if ka == head else ka)
                        progressing = True
                        break
                closed = chain[0] == chain[-1] and len(chain) > 2
            if closed:
                loops.append(chain)
                self._loop_cells.append(cells)
            else:
                open_chains += 1
        return loops, open_chains


def count_ovals(
    f: MultiPoly,
    box: Box | None = None,
    resolution: int = 256,
    certify: bool = True,
) -> OvalSet:
    """Count closed real components by adaptive marching squares on exact signs."""
    if resolution < 2:
        raise PreconditionError("resolution must be at least 2")
    ip = _IntPoly(f)
    if box is None:
        box = default_box(f)
    warnings: list[str] = []
    shift_num = 0
    while True:
        # a lattice slightly larger than the box, shifted to dodge exact zeros
        sx = (box.x_hi - box.x_lo) / resolution
        sy = (box.y_hi - box.y_lo) / resolution
        delta_x = sx * shift_num / Fraction(257)
        delta_y = sy * shift_num / Fraction(251)
        x_lo, x_hi = box.x_lo - sx + delta_x, box.x_hi + sx + delta_x
        y_lo, y_hi = box.y_lo - sy + delta_y, box.y_hi + sy + delta_y
        n = resolution + 2
        ax, sxi, dx = _lattice(x_lo, x_hi, n)
        ay, syi, dy = _lattice(y_lo, y_hi, n)
        signs, fvals = _sign_grid(ip, ax, sxi, dx, ay, syi, dy, n)
        if not (signs == 0).any():
            break
        shift_num += 1
        if shift_num > 16:
            raise DegenerateInput("could not shift the lattice off the curve")
    if shift_num:
        warnings.append(f"lattice shifted {shift_num} time(s) to avoid exact zeros at nodes")

    nodes_x = [Fraction(ax + i * sxi, dx) for i in range(n + 1)]
    nodes_y = [Fraction(ay + j * syi, dy) for j in range(n + 1)]
    mesher = _Mesher(f, ip, (signs, fvals), n, nodes_x, nodes_y)
    mesher.run()
    loops, open_chains = mesher.assemble()
    warnings.extend(mesher.warnings)
    if open_chains:
        warnings.append(f"{open_chains} open chain(s) reached the search boundary")

    result = OvalSet(box=box, resolution=resolution, warnings=warnings, open_chains=open_chains)
    edge_memo: dict = {}
    for chain, cells in zip(loops, mesher._loop_cells):
        verts = [mesher.vertex_pos[k] for k in chain]
        ok = True
        if any(c in mesher.uncertified_cells for c in cells):
            ok = False
        if certify and ok:
            ok = _certify_loop(f, mesher, cells, nodes_x, nodes_y, edge_memo)
        result.ovals.append(Oval(verts, bool(ok) if certify else False))
    result.ovals.sort(key=lambda o: (min(v[0] for v in o.vertices), min(v[1] for v in o.vertices)))
    return result


def _certify_loop(f, mesher: _Mesher, cells, nodes_x, nodes_y, memo: dict) -> bool:
    for i, j in cells:
        for kind, ei, ej in _cell_edges(i, j).values():
            key = (kind, ei, ej)
            if key in mesher.crossed_edges:
                continue
            if key not in memo:
                if kind == "h":
                    p1 = (nodes_x[ei], nodes_y[ej])
                    p2 = (nodes_x[ei + 1], nodes_y[ej])
                else:
                    p1 = (nodes_x[ei], nodes_y[ej])
                    p2 = (nodes_x[ei], nodes_y[ej + 1])
                memo[key] = _edge_is_zero_free(f, p1, p2)
            if not memo[key]:
                return False
    return True


# -- numeric tracing -------------------------------------------------------------------


def _compile(f: MultiPoly):
    terms = [(a, b, float(c.re)) for (a, b), c in f.terms.items()]

    def ev(x: float, y: float) -> float:
        total = 0.0
        for a, b, c in terms:
            total += c * x**a * y**b
        return total

    return ev


def compile_gradient(f: MultiPoly):
    return _compile(f.partial(0)), _compile(f.partial(1))


def newton_project(f: MultiPoly, pt, tol: float = 1e-13, max_iter: int = 60):
    """Project a point onto f = 0 along the gradient; None when it fails."""
    ev = _compile(f)
    gx, gy = compile_gradient(f)
    x, y = float(pt[0]), float(pt[1])
    for _ in range(max_iter):
        v = ev(x, y)
        dx, dy = gx(x, y), gy(x, y)
        g2 = dx * dx + dy * dy
        if g2 < 1e-24:
            return None
        if abs(v) <= tol * max(1.0, math.sqrt(g2)):
            return (x, y)
        x -= v * dx / g2
        y -= v * dy / g2
    return None


def trace_oval(
    f: MultiPoly,
    seed: tuple[float, float],
    spacing: float = 1.5e-3,
    tol: float = 1e-12,
    max_steps: int = 2_000_000,
) -> list[tuple[float, float]]:
    """Predictor-corrector trace of the closed component through `seed`.

    Every vertex satisfies |f| < tol * |grad f|; the polyline closes exactly
    (last vertex = first).  Raises on singular approach or failure to close.
    """
    if not f.has_real_coefficients():
        raise PreconditionError("real coefficients required")
    ev = _compile(f)
    gx, gy = compile_gradient(f)
    start = newton_project(f, seed, tol)
    if start is None:
        raise PreconditionError("seed failed to project onto the curve")
    x, y = start
    pts = [(x, y)]
    h = spacing
    for step in range(max_steps):
        dx, dy = gx(x, y), gy(x, y)
        norm = math.hypot(dx, dy)
        if norm < 1e-9:
            raise DegenerateInput("trace approached a singular point of the curve")
        tx, ty = -dy / norm, dx / norm
        px, py = x + h * tx, y + h * ty
        # corrector: Newton along the gradient
        cx, cy = px, py
        for _ in range(12):
            v = ev(cx, cy)
            ddx, ddy = gx(cx, cy), gy(cx, cy)
            g2 = ddx * ddx + ddy * ddy
            if g2 < 1e-18:
                raise DegenerateInput("trace approached a singular point of the curve")
            if abs(v) <= tol * math.sqrt(g2):
                break
            cx -= v * ddx / g2
            cy -= v * ddy / g2
        else:
            h *= 0.5
            if h < spacing * 1e-6:
                raise DegenerateInput("corrector failed; step size underflow")
            continue
        x, y = cx, cy
        pts.append((x, y))
        if step > 4 and math.hypot(x - start[0], y - start[1]) < 0.9 * h:
            pts[-1] = start
            return pts
        if h < spacing:
            h = min(spacing, h * 1.5)
    raise DegenerateInput("trace did not close within the step budget")


def refine_polyline(f: MultiPoly, pts: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Insert curve-projected midpoints between consecutive vertices (closed)."""
    out: list[tuple[float, float]] = []
    for k in range(len(pts) - 1):
        out.append(pts[k])
        mx = 0.5 * (pts[k][0] + pts[k + 1][0])
        my = 0.5 * (pts[k][1] + pts[k + 1][1])
        proj = newton_project(f, (mx, my))
        out.append(proj if proj is not None else (mx, my))
    out.append(pts[-1])
    return out
