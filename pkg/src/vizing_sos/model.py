"""Ideals and the target polynomial for a fixed graph-class partition.

A partition is the quadruple (n_g, k_g, n_h, k_h): graphs on n_g vertices
whose minimum dominating set has size k_g (with the dominating set fixed to
the first k_g labels), paired with graphs on n_h vertices and minimum
dominating set size k_h.  From the partition we build:

* the side ideals constraining the edge variables of each class,
* the product ideal forcing every product-graph vertex to be dominated,
* their union (the full ideal the certificate search runs against), and
* the surplus polynomial: (sum of product-vertex indicators) - k_g * k_h,
  which is nonnegative on the variety exactly when every dominating set of
  every product graph in the partition has size at least k_g * k_h.

All generators are stored expanded with exact integer coefficients.  The
identically-zero generators arising at k = 1 (empty index set in the
minimality family) are dropped.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field

from .algebra import MONO_ONE, Polynomial, Rat, VarTable, poly_to_str, rat

#: Provenance tags for generators.
FIELD_EQ = "field-eq"
DOMINATING = "dominating"
MINIMALITY = "minimality"
PRODUCT_FIELD_EQ = "product-field-eq"
PRODUCT_DOMINATED = "product-dominated"

GENERATOR_TAGS = (FIELD_EQ, DOMINATING, MINIMALITY, PRODUCT_FIELD_EQ, PRODUCT_DOMINATED)


@dataclass(frozen=True)
class GraphClassParams:
    """The partition (n_g, k_g, n_h, k_h); dominating sets are {0..k-1}."""

    n_g: int
    k_g: int
    n_h: int
    k_h: int

    def __post_init__(self):
        if not (1 <= self.k_g <= self.n_g):
            raise ValueError(f"need 1 <= k_g <= n_g, got k_g={self.k_g}, n_g={self.n_g}")
        if not (1 <= self.k_h <= self.n_h):
            raise ValueError(f"need 1 <= k_h <= n_h, got k_h={self.k_h}, n_h={self.n_h}")

    @classmethod
    def parse(cls, text: str) -> "GraphClassParams":
        """Parse 'n_g,k_g,n_h,k_h'."""
        parts = [int(p) for p in text.replace(" ", "").split(",")]
        if len(parts) != 4:
            raise ValueError("expected four comma-separated integers")
        return cls(*parts)

    def label(self) -> str:
        return f"{self.n_g},{self.k_g},{self.n_h},{self.k_h}"

    def var_table(self) -> VarTable:
        return VarTable(self.n_g, self.n_h)


@dataclass
class IdealBasis:
    """Expanded generators with provenance tags, over a shared table."""

    table: VarTable
    generators: list[tuple[str, Polynomial]] = field(default_factory=list)

    def add(self, tag: str, p: Polynomial):
        if tag not in GENERATOR_TAGS:
            raise ValueError(f"unknown provenance tag {tag!r}")
        if p.is_zero:
            return
        self.generators.append((tag, p))

    @property
    def polys(self) -> list[Polynomial]:
        return [p for _, p in self.generators]

    def __len__(self) -> int:
        return len(self.generators)

    def support(self) -> frozenset[int]:
        """Indices of all variables occurring in some generator."""
        vs: set[int] = set()
        for _, p in self.generators:
            for m in p.coeffs:
                vs.update(v for v, _ in m)
        return frozenset(vs)

    def digest(self) -> str:
        """Content digest over the canonical generator text."""
        h = hashlib.sha256()
        h.update(f"vars:{self.table.n_g},{self.table.n_h}\n".encode())
        for tag, p in self.generators:
            h.update(f"{tag}:{poly_to_str(p)}\n".encode())
        return h.hexdigest()

    def to_text(self) -> str:
        lines = [f"# vars: {self.table.n_g},{self.table.n_h}"]
        for tag, p in self.generators:
            lines.append(f"# {tag}")
            lines.append(poly_to_str(p))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IdealBasis":
        table = None
        basis = None
        tag = None
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("# vars:"):
                n_g, n_h = (int(v) for v in line.split(":", 1)[1].split(","))
                table = VarTable(n_g, n_h)
                basis = cls(table)
            elif line.startswith("#"):
                tag = line[1:].strip()
            else:
                if basis is None or tag is None:
                    raise ValueError("ideal text must start with '# vars:' header")
                basis.add(tag, table.parse(line))
        if basis is None:
            raise ValueError("empty ideal text")
        return basis


def _field_equation(table: VarTable, v: int) -> Polynomial:
    return table.poly({((v, 2),): rat(1), ((v, 1),): rat(-1)})


def side_ideal(params: GraphClassParams, side: str) -> IdealBasis:
    """Edge-variable ideal for one side ('G' or 'H') of the partition.

    Generators: one field equation e^2 - e per vertex pair; for each vertex g
    outside the fixed dominating set D the product of (1 - e_{gg'}) over
    g' in D (g must have a neighbour in D); and for each vertex subset S of
    size k - 1 the product over g' outside S of the sums of edges from S to
    g' (no smaller set dominates).
    """
    if side not in ("G", "H"):
        raise ValueError("side must be 'G' or 'H'")
    table = params.var_table()
    if side == "G":
        n, k, edge = params.n_g, params.k_g, table.eg
    else:
        n, k, edge = params.n_h, params.k_h, table.eh
    basis = IdealBasis(table)
    one = table.one()

    for a in range(n):
        for b in range(a + 1, n):
            idx = table.eg_index(a, b) if side == "G" else table.eh_index(a, b)
            basis.add(FIELD_EQ, _field_equation(table, idx))

    dom = list(range(k))
    for g in range(k, n):
        prod = one
        for gp in dom:
            prod = prod * (one - edge(gp, g))
        basis.add(DOMINATING, prod)

    for s_set in itertools.combinations(range(n), k - 1):
        prod = one
        for gp in range(n):
            if gp in s_set:
                continue
            total = table.zero()
            for g in s_set:
                total = total + edge(g, gp)
            prod = prod * total
        if s_set:  # empty S gives the zero polynomial; drop it
            basis.add(MINIMALITY, prod)
    return basis


def product_ideal(params: GraphClassParams) -> IdealBasis:
    """Vertex-variable ideal of the product graph: 2 * n_g * n_h generators.

    Per product vertex (g,h): the field equation x^2 - x, and the domination
    constraint (1 - x_gh) * prod(1 - e_gg' x_g'h) * prod(1 - e_hh' x_gh'),
    which vanishes iff (g,h) is in the chosen set or adjacent to a member.
    """
    table = params.var_table()
    basis = IdealBasis(table)
    one = table.one()
    for g in range(params.n_g):
        for h in range(params.n_h):
            basis.add(PRODUCT_FIELD_EQ, _field_equation(table, table.x_index(g, h)))
            prod = one - table.x(g, h)
            for gp in range(params.n_g):
                if gp == g:
                    continue
                prod = prod * (one - table.eg(g, gp) * table.x(gp, h))
            for hp in range(params.n_h):
                if hp == h:
                    continue
                prod = prod * (one - table.eh(h, hp) * table.x(g, hp))
            basis.add(PRODUCT_DOMINATED, prod)
    return basis


def sos_ideal(params: GraphClassParams) -> IdealBasis:
    """Union of both side ideals and the product ideal, provenance kept."""
    table = params.var_table()
    basis = IdealBasis(table)
    for part in (side_ideal(params, "G"), side_ideal(params, "H"), product_ideal(params)):
        basis.generators.extend(part.generators)
    return basis


def surplus_polynomial(params: GraphClassParams) -> Polynomial:
    """Sum of all product-vertex indicators minus k_g * k_h (degree 1)."""
    table = params.var_table()
    coeffs = {MONO_ONE: rat(-params.k_g * params.k_h)}
    for g in range(params.n_g):
        for h in range(params.n_h):
            coeffs[((table.x_index(g, h), 1),)] = Rat(1)
    return table.poly(coeffs)
