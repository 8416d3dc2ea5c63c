"""Reduced Groebner bases, normal forms, and standard monomials.

Two Buchberger engines share the public interface:

* A fast engine for ideals whose generators include the field equation
  x^2 - x for every occurring variable (every pipeline ideal does).  Normal
  forms modulo such an ideal are multilinear, so monomials reduce to variable
  bitsets stored as plain ints: multiplication is bitwise-or, divisibility is
  subset testing, and the graded reverse lexicographic order is the integer
  key (popcount, -mask).  The field equations are folded into monomial
  arithmetic; pairs against them become "multiply by a leading variable"
  pairs, and the ones surviving interreduction are restored in the output.

* A generic sparse-monomial engine used for everything else.

Both run Buchberger with normal-strategy pair selection and Gebauer-Moeller
pair elimination (the two Buchberger criteria), followed by minimalization
and a full interreduction pass, so the result is the unique reduced basis
for the fixed order.  Work is metered: every single-term reduction event
spends one unit of the step budget, and exhaustion raises
:class:`StepBudgetExceeded` rather than returning a wrong basis.

Completed bases are immutable and shareable; computation is single-threaded
and deterministic.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush

from .algebra import (
    GREVLEX,
    MONO_ONE,
    Monomial,
    MonomialOrder,
    Polynomial,
    QuadExt,
    Rat,
    VarTable,
    mono_degree,
    mono_div,
    mono_is_squarefree,
    mono_lcm,
    mono_mul,
    poly_to_str,
    quadext_to_rational_parts,
    rat,
)
from .model import IdealBasis

DEFAULT_STEP_BUDGET = 10_000_000


class StepBudgetExceeded(RuntimeError):
    """The reduction-step budget ran out; no basis is returned."""


class WholeRingError(ValueError):
    """The ideal is the whole ring (1 reduces to 0)."""


@dataclass
class StepBudget:
    limit: int = DEFAULT_STEP_BUDGET
    used: int = 0

    def spend(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise StepBudgetExceeded(
                f"exceeded {self.limit} reduction steps; "
                "raise the budget to continue"
            )


# ---------------------------------------------------------------------------
# Bitmask helpers (multilinear monomials as variable bitsets)
# ---------------------------------------------------------------------------


def _mono_to_mask(m: Monomial) -> int:
    """Fold a monomial to its squarefree bitset (reduction by field equations)."""
    mask = 0
    for v, _ in m:
        mask |= 1 << v
    return mask


def _mask_to_mono(mask: int) -> Monomial:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append((i, 1))
        mask >>= 1
        i += 1
    return tuple(out)


def _poly_to_masks(p: Polynomial) -> dict[int, object]:
    """Coefficient map keyed by folded bitmask monomials."""
    out: dict[int, object] = {}
    for m, c in p.coeffs.items():
        mask = _mono_to_mask(m)
        prev = out.get(mask)
        s = c if prev is None else prev + c
        if s:
            out[mask] = s
        elif mask in out:
            del out[mask]
    return out


def _mask_key(mask: int):
    """Ascending-order key: larger key = larger monomial in grevlex."""
    return (mask.bit_count(), -mask)


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _MaskReducers:
    """Reducer lookup bucketed by the lowest variable of each leading term."""

    def __init__(self, nvars: int):
        self.lts: list[int] = []
        self.tails: list[list[tuple[int, object]]] = []
        self.buckets: list[list[int]] = [[] for _ in range(nvars)]

    def add(self, lt: int, tail: list[tuple[int, object]]) -> int:
        idx = len(self.lts)
        self.lts.append(lt)
        self.tails.append(tail)
        self.buckets[(lt & -lt).bit_length() - 1].append(idx)
        return idx

    def find(self, mask: int, skip: int = -1) -> int:
        lts = self.lts
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            for idx in self.buckets[low.bit_length() - 1]:
                if idx != skip and lts[idx] & ~mask == 0:
                    return idx
        return -1


def _reduce_masks(
    poly: dict[int, object],
    reducers: _MaskReducers,
    budget: StepBudget,
    skip: int = -1,
) -> dict[int, object]:
    """Full normal form of a multilinear coefficient map."""
    work = dict(poly)
    out: dict[int, object] = {}
    heap = [(-m.bit_count(), m) for m in work]
    heapify(heap)
    tails = reducers.tails
    while heap:
        _, m = heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        idx = reducers.find(m, skip)
        budget.spend()
        if idx < 0:
            out[m] = c
            continue
        cof = m & ~reducers.lts[idx]
        for tm, tc in tails[idx]:
            mm = cof | tm
            prev = work.get(mm)
            if prev is None:
                val = -(c * tc)
                if val:
                    work[mm] = val
                    heappush(heap, (-mm.bit_count(), mm))
            else:
                val = prev - c * tc
                if val:
                    work[mm] = val
                else:
                    del work[mm]
    return out


def _mask_update_pairs(
    pairs: set[tuple[int, int]],
    lts: list[int],
    new_idx: int,
):
    """Gebauer-Moeller pair update for the bitmask engine.

    Implements both Buchberger criteria: the chain criterion prunes old and
    grouped new pairs, and the product criterion drops pairs with disjoint
    leading supports.
    """
    lt_new = lts[new_idx]
    kept = set()
    for i, j in pairs:
        lcm_ij = lts[i] | lts[j]
        if (
            lt_new & ~lcm_ij != 0
            or lcm_ij == lts[i] | lt_new
            or lcm_ij == lts[j] | lt_new
        ):
            kept.add((i, j))
    groups: dict[int, list[int]] = {}
    for i in range(new_idx):
        groups.setdefault(lts[i] | lt_new, []).append(i)
    minimal: list[int] = []
    for lcm_mask in sorted(groups, key=_mask_key):
        if all(keep & ~lcm_mask != 0 for keep in minimal):
            minimal.append(lcm_mask)
    for lcm_mask in minimal:
        members = groups[lcm_mask]
        if any(lts[i] & lt_new == 0 for i in members):
            continue  # product criterion
        kept.add((min(members), new_idx))
    return kept


def _mask_buchberger(
    gens: list[dict[int, object]],
    nvars: int,
    budget: StepBudget,
) -> list[tuple[int, list[tuple[int, object]]]]:
    """Reduced multilinear basis (leading term, monic tail) pairs."""
    reducers = _MaskReducers(nvars)
    lts = reducers.lts
    pairs: set[tuple[int, int]] = set()
    heap: list[tuple] = []

    def push_element(poly: dict[int, object]):
        nonlocal pairs
        lt = max(poly, key=_mask_key)
        lc = poly[lt]
        tail = sorted(
            ((m, c / lc) for m, c in poly.items() if m != lt),
            key=lambda t: _mask_key(t[0]),
            reverse=True,
        )
        idx = reducers.add(lt, tail)
        pairs = _mask_update_pairs(pairs, lts, idx)
        for i, j in list(pairs):
            if j == idx:
                lcm_mask = lts[i] | lt
                heappush(heap, (lcm_mask.bit_count(), -lcm_mask, 0, i, j))
        for v in _iter_bits(lt):
            heappush(heap, (lt.bit_count() + 1, -lt, 1, idx, v))

    for g in gens:
        r = _reduce_masks(g, reducers, budget)
        if r:
            push_element(r)

    while heap:
        entry = heappop(heap)
        kind = entry[2]
        if kind == 0:
            i, j = entry[3], entry[4]
            if (i, j) not in pairs:
                continue
            pairs.discard((i, j))
            lcm_mask = lts[i] | lts[j]
            cof_i = lcm_mask & ~lts[i]
            cof_j = lcm_mask & ~lts[j]
            s: dict[int, object] = {}
            for tm, tc in reducers.tails[i]:
                mm = cof_i | tm
                prev = s.get(mm)
                val = tc if prev is None else prev + tc
                if val:
                    s[mm] = val
                elif mm in s:
                    del s[mm]
            for tm, tc in reducers.tails[j]:
                mm = cof_j | tm
                prev = s.get(mm)
                val = -tc if prev is None else prev - tc
                if val:
                    s[mm] = val
                elif mm in s:
                    del s[mm]
        else:
            idx, v = entry[3], entry[4]
            bit = 1 << v
            s = {}
            for tm, tc in reducers.tails[idx]:
                mm = bit | tm
                prev = s.get(mm)
                val = tc if prev is None else prev + tc
                if val:
                    s[mm] = val
                elif mm in s:
                    del s[mm]
            lt = lts[idx]
            prev = s.get(lt)
            val = rat(1) if prev is None else prev + 1
            if val:
                s[lt] = val
            elif lt in s:
                del s[lt]
        r = _reduce_masks(s, reducers, budget)
        if r:
            push_element(r)

    # Minimalize: drop elements whose leading term another leading term divides.
    order = sorted(range(len(lts)), key=lambda i: _mask_key(lts[i]))
    kept: list[int] = []
    kept_lts: list[int] = []
    for i in order:
        if all(lt & ~lts[i] != 0 for lt in kept_lts):
            kept.append(i)
            kept_lts.append(lts[i])

    # Interreduce tails against the other kept elements.
    final = _MaskReducers(nvars)
    positions = []
    for i in kept:
        positions.append(final.add(lts[i], reducers.tails[i]))
    out = []
    for pos in positions:
        tail_map = dict(final.tails[pos])
        reduced = _reduce_masks(tail_map, final, budget, skip=pos)
        tail = sorted(reduced.items(), key=lambda t: _mask_key(t[0]), reverse=True)
        final.tails[pos] = tail
        out.append((final.lts[pos], tail))
    out.sort(key=lambda e: _mask_key(e[0]), reverse=True)
    return out


# ---------------------------------------------------------------------------
# Generic sparse-monomial engine
# ---------------------------------------------------------------------------


def _reduce_sparse(
    coeffs: dict[Monomial, object],
    reducers: list[tuple[Monomial, list[tuple[Monomial, object]]]],
    table: VarTable,
    budget: StepBudget,
    skip: int = -1,
) -> dict[Monomial, object]:
    """Normal form by full-ring division (reducers monic, any exponents)."""
    key = table.mono_key
    work = dict(coeffs)
    out: dict[Monomial, object] = {}
    heap = [(_negate(key(m)), m) for m in work]
    heapify(heap)
    while heap:
        _, m = heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        budget.spend()
        hit = None
        for idx, (lt, tail) in enumerate(reducers):
            if idx == skip:
                continue
            cof = mono_div(m, lt)
            if cof is not None:
                hit = (cof, tail)
                break
        if hit is None:
            out[m] = c
            continue
        cof, tail = hit
        for tm, tc in tail:
            mm = mono_mul(cof, tm)
            prev = work.get(mm)
            if prev is None:
                val = -(c * tc)
                if val:
                    work[mm] = val
                    heappush(heap, (_negate(key(mm)), mm))
            else:
                val = prev - c * tc
                if val:
                    work[mm] = val
                else:
                    del work[mm]
    return out


def _negate(k):
    return (-k[0], tuple(-x for x in k[1]))


def _sparse_buchberger(
    gens: list[dict[Monomial, object]],
    table: VarTable,
    budget: StepBudget,
) -> list[tuple[Monomial, list[tuple[Monomial, object]]]]:
    key = table.mono_key
    elements: list[tuple[Monomial, list[tuple[Monomial, object]]]] = []
    pairs: set[tuple[int, int]] = set()
    heap: list[tuple] = []

    def monic(poly: dict[Monomial, object]):
        lt = max(poly, key=key)
        lc = poly[lt]
        tail = sorted(
            ((m, c / lc) for m, c in poly.items() if m != lt),
            key=lambda t: key(t[0]),
            reverse=True,
        )
        return lt, tail

    def update(poly: dict[Monomial, object]):
        nonlocal pairs
        lt, tail = monic(poly)
        new_idx = len(elements)
        elements.append((lt, tail))
        kept = set()
        for i, j in pairs:
            lcm_ij = mono_lcm(elements[i][0], elements[j][0])
            if (
                mono_div(lcm_ij, lt) is None
                or lcm_ij == mono_lcm(elements[i][0], lt)
                or lcm_ij == mono_lcm(elements[j][0], lt)
            ):
                kept.add((i, j))
        groups: dict[Monomial, list[int]] = {}
        for i in range(new_idx):
            groups.setdefault(mono_lcm(elements[i][0], lt), []).append(i)
        minimal: list[Monomial] = []
        for lcm_m in sorted(groups, key=key):
            if all(mono_div(lcm_m, mm) is None for mm in minimal):
                minimal.append(lcm_m)
        for lcm_m in minimal:
            members = groups[lcm_m]
            if any(lcm_m == mono_mul(elements[i][0], lt) for i in members):
                continue  # product criterion: coprime leading terms
            kept.add((min(members), new_idx))
        pairs = kept
        for i, j in pairs:
            if j == new_idx:
                lcm_m = mono_lcm(elements[i][0], lt)
                heappush(heap, (key(lcm_m), i, j))

    reducers_view = elements  # reduced against the live list

    for g in gens:
        r = _reduce_sparse(g, reducers_view, table, budget)
        if r:
            update(r)

    while heap:
        _, i, j = heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        lt_i, tail_i = elements[i]
        lt_j, tail_j = elements[j]
        lcm_m = mono_lcm(lt_i, lt_j)
        cof_i = mono_div(lcm_m, lt_i)
        cof_j = mono_div(lcm_m, lt_j)
        s: dict[Monomial, object] = {}
        for tm, tc in tail_i:
            mm = mono_mul(cof_i, tm)
            prev = s.get(mm)
            val = tc if prev is None else prev + tc
            if val:
                s[mm] = val
            elif mm in s:
                del s[mm]
        for tm, tc in tail_j:
            mm = mono_mul(cof_j, tm)
            prev = s.get(mm)
            val = -tc if prev is None else prev - tc
            if val:
                s[mm] = val
            elif mm in s:
                del s[mm]
        r = _reduce_sparse(s, reducers_view, table, budget)
        if r:
            update(r)

    order = sorted(range(len(elements)), key=lambda i: key(elements[i][0]))
    kept_idx: list[int] = []
    for i in order:
        if all(
            mono_div(elements[i][0], elements[k][0]) is None for k in kept_idx
        ):
            kept_idx.append(i)
    minimal_elems = [elements[i] for i in kept_idx]
    out = []
    for pos, (lt, tail) in enumerate(minimal_elems):
        reduced = _reduce_sparse(dict(tail), minimal_elems, table, budget, skip=pos)
        new_tail = sorted(reduced.items(), key=lambda t: key(t[0]), reverse=True)
        out.append((lt, new_tail))
    out.sort(key=lambda e: key(e[0]), reverse=True)
    return out


# ---------------------------------------------------------------------------
# Public interface
# ---------------------------------------------------------------------------


@dataclass
class GroebnerBasis:
    """Reduced basis: monic elements, no term divisible by another lead."""

    table: VarTable
    elements: tuple[Polynomial, ...]
    order: MonomialOrder = GREVLEX
    source_digest: str = ""
    kind: str = "generic"
    boolean_vars: frozenset[int] = frozenset()
    _mask_reducers: object = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.elements)

    def leading_monomials(self) -> list[Monomial]:
        return [p.leading()[0] for p in self.elements]

    def contains_one(self) -> bool:
        return any(p.leading()[0] == MONO_ONE for p in self.elements)

    def mask_reducers(self) -> _MaskReducers:
        """Bitmask reducer structure over multilinear elements (lazy, cached)."""
        if self._mask_reducers is None:
            red = _MaskReducers(self.table.nvars)
            for p in self.elements:
                lt, lc = p.leading()
                if not mono_is_squarefree(lt):
                    continue  # restored field equations; folding handles them
                tail = [
                    (_mono_to_mask(m), c)
                    for m, c in p.terms()[1:]
                ]
                red.add(_mono_to_mask(lt), tail)
            object.__setattr__(self, "_mask_reducers", red)
        return self._mask_reducers

    def to_text(self) -> str:
        lines = [
            f"# vars: {self.table.n_g},{self.table.n_h}",
            f"# order: {self.order.kind}",
            f"# kind: {self.kind}",
            f"# source-digest: {self.source_digest}",
            f"# boolean-vars: {','.join(str(v) for v in sorted(self.boolean_vars))}",
            f"# elements: {len(self.elements)}",
        ]
        lines.extend(poly_to_str(p) for p in self.elements)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GroebnerBasis":
        table = None
        meta: dict[str, str] = {}
        polys: list[Polynomial] = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                k, _, v = line[1:].partition(":")
                meta[k.strip()] = v.strip()
                if k.strip() == "vars":
                    n_g, n_h = (int(x) for x in v.split(","))
                    table = VarTable(n_g, n_h)
            else:
                if table is None:
                    raise ValueError("basis text must start with '# vars:' header")
                polys.append(table.parse(line))
        if table is None:
            raise ValueError("empty basis text")
        bool_vars = frozenset(
            int(v) for v in meta.get("boolean-vars", "").split(",") if v
        )
        return cls(
            table=table,
            elements=tuple(polys),
            source_digest=meta.get("source-digest", ""),
            kind=meta.get("kind", "generic"),
            boolean_vars=bool_vars,
        )


def _detect_boolean(table: VarTable, polys: list[Polynomial]):
    """Variables with a field equation generator, if they cover the support."""
    field_vars: set[int] = set()
    others: list[Polynomial] = []
    for p in polys:
        cs = p.coeffs
        if len(cs) == 2:
            monos = sorted(cs, key=mono_degree)
            lo, hi = monos
            if (
                len(hi) == 1
                and len(lo) == 1
                and hi[0][1] == 2
                and lo[0][1] == 1
                and hi[0][0] == lo[0][0]
                and cs[hi] == -cs[lo]
            ):
                field_vars.add(hi[0][0])
                continue
        others.append(p)
    support: set[int] = set()
    for p in others:
        for m in p.coeffs:
            support.update(v for v, _ in m)
    if support <= field_vars:
        return frozenset(field_vars), others
    return None, polys


def buchberger(
    basis,
    order: MonomialOrder = GREVLEX,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> GroebnerBasis:
    """Reduced Groebner basis of an :class:`IdealBasis` (or polynomial list).

    Deterministic for fixed input and order.  Fails with
    :class:`StepBudgetExceeded` when the budget runs out.
    """
    if isinstance(basis, IdealBasis):
        table = basis.table
        polys = basis.polys
        digest = basis.digest()
    else:
        polys = list(basis)
        if not polys:
            raise ValueError("cannot infer the variable table from an empty list")
        table = polys[0].table
        h = hashlib.sha256()
        for p in polys:
            h.update(poly_to_str(p).encode())
            h.update(b"\n")
        digest = h.hexdigest()
    if order != GREVLEX:
        raise ValueError("only the graded reverse lexicographic order is supported")
    polys = [p for p in polys if not p.is_zero]
    budget = StepBudget(step_budget)

    boolean_vars, rest = _detect_boolean(table, polys)
    if boolean_vars is not None:
        gens = [_poly_to_masks(p) for p in rest]
        gens = [g for g in gens if g]
        reduced = _mask_buchberger(gens, table.nvars, budget)
        elements = [
            table.poly(
                {_mask_to_mono(lt): rat(1), **{_mask_to_mono(m): c for m, c in tail}}
            )
            for lt, tail in reduced
        ]
        single_var_lts = {
            lt.bit_length() - 1 for lt, _ in reduced if lt.bit_count() == 1
        }
        for v in sorted(boolean_vars):
            if v not in single_var_lts:
                elements.append(
                    table.poly({((v, 2),): rat(1), ((v, 1),): rat(-1)})
                )
        elements.sort(key=lambda p: table.mono_key(p.leading()[0]), reverse=True)
        return GroebnerBasis(
            table=table,
            elements=tuple(elements),
            order=order,
            source_digest=digest,
            kind="boolean",
            boolean_vars=boolean_vars,
        )

    gens = [dict(p.coeffs) for p in polys]
    reduced = _sparse_buchberger(gens, table, budget)
    elements = [
        table.poly({lt: rat(1), **dict(tail)}) for lt, tail in reduced
    ]
    return GroebnerBasis(
        table=table,
        elements=tuple(elements),
        order=order,
        source_digest=digest,
        kind="generic",
    )


def normal_form(p: Polynomial, gb: GroebnerBasis,
                step_budget: int = DEFAULT_STEP_BUDGET) -> Polynomial:
    """The unique reduced representative of p modulo the basis ideal."""
    if p.table != gb.table:
        raise ValueError("polynomial and basis use different variable tables")
    if any(isinstance(c, QuadExt) for c in p.coeffs.values()):
        p_rat, p_irr = quadext_to_rational_parts(p)
        d = next(c.d for c in p.coeffs.values() if isinstance(c, QuadExt))
        nf_rat = normal_form(p_rat, gb, step_budget)
        nf_irr = normal_form(p_irr, gb, step_budget)
        combined = nf_rat + nf_irr.map_coeffs(lambda c: QuadExt(0, c, d))
        return combined
    budget = StepBudget(step_budget)
    if gb.kind == "boolean":
        support = {v for m in p.coeffs for v, _ in m}
        if support <= gb.boolean_vars:
            masks = _poly_to_masks(p)
            reduced = _reduce_masks(masks, gb.mask_reducers(), budget)
            return gb.table.poly({_mask_to_mono(m): c for m, c in reduced.items()})
    reducers = []
    for q in gb.elements:
        lt, _ = q.leading()
        reducers.append((lt, q.terms()[1:]))
    reduced = _reduce_sparse(dict(p.coeffs), reducers, gb.table, budget)
    return gb.table.poly(reduced)


def reduced_monomials(gb: GroebnerBasis, ell: int) -> list[Monomial]:
    """Standard monomials of degree <= ell, in decreasing monomial order.

    Standard monomials form a downward-closed set, so they are enumerated by
    extending standard monomials one variable at a time (never below the
    largest variable already present), checking divisibility only against
    leading terms containing the newly added variable.
    """
    if ell < 0:
        return []
    table = gb.table
    lead = gb.leading_monomials()
    if any(lt == MONO_ONE for lt in lead):
        raise WholeRingError("the ideal is the whole ring; no standard monomials")
    by_var: dict[int, list[Monomial]] = {}
    for lt in lead:
        for v, _ in lt:
            by_var.setdefault(v, []).append(lt)

    found: list[Monomial] = [MONO_ONE]
    frontier: list[Monomial] = [MONO_ONE]
    for _ in range(ell):
        nxt: list[Monomial] = []
        for m in frontier:
            start = m[-1][0] if m else 0
            for v in range(start, table.nvars):
                if m and v == start:
                    cand = m[:-1] + ((v, m[-1][1] + 1),)
                else:
                    cand = m + ((v, 1),)
                reducible = False
                for lt in by_var.get(v, ()):
                    if mono_div(cand, lt) is not None:
                        reducible = True
                        break
                if not reducible:
                    nxt.append(cand)
        found.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    found.sort(key=table.mono_key, reverse=True)
    return found


def saturation_check(gb: GroebnerBasis, ell: int) -> bool:
    """True iff no new standard monomials appear between degree ell and ell+1.

    When true, an infeasible certificate search at ell rules out certificates
    of every degree.
    """
    return len(reduced_monomials(gb, ell + 1)) == len(reduced_monomials(gb, ell))


# ---------------------------------------------------------------------------
# Persistence / cache
# ---------------------------------------------------------------------------


def save_basis(gb: GroebnerBasis, path: str):
    with open(path, "w") as fh:
        fh.write(gb.to_text())


def load_basis(path: str) -> GroebnerBasis:
    with open(path) as fh:
        return GroebnerBasis.from_text(fh.read())


def cached_buchberger(
    basis: IdealBasis,
    cache_dir: str | None = None,
    order: MonomialOrder = GREVLEX,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> GroebnerBasis:
    """Buchberger with a content-addressed file cache keyed by ideal digest."""
    if cache_dir is None:
        return buchberger(basis, order=order, step_budget=step_budget)
    digest = basis.digest()
    path = os.path.join(cache_dir, f"gb-{order.kind}-{digest[:24]}.txt")
    if os.path.exists(path):
        gb = load_basis(path)
        if gb.source_digest == digest:
            return gb
    gb = buchberger(basis, order=order, step_budget=step_budget)
    os.makedirs(cache_dir, exist_ok=True)
    tmp = path + ".tmp"
    save_basis(gb, tmp)
    os.replace(tmp, path)
    return gb
