"""Division with remainder, Buchberger completion, and syzygies.

Everything here works over a free module ``k[x]^rank``; quotient-ring
behaviour is layered on top by ``rings`` (lifting the defining ideal into
the generating set).  The engine is deterministic: identical inputs yield
identical reduced bases, element for element.

Internally vectors are the term dicts of ``FreeElement``; the public
surface wraps them back into value objects.
"""

from __future__ import annotations

import heapq
from typing import Dict, List, Sequence, Tuple

from . import cache
from .errors import DimensionError
from .fields import FieldSpec
from .limits import abort_point, check_term_degree
from .orders import DEFAULT_ORDER, MonomialOrder
from .poly import (
    FreeElement,
    Polynomial,
    mono_coprime,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_sub,
    polynomial_to_element,
)

Term = Tuple[int, Tuple[int, ...]]
TermDict = Dict[Term, object]


def _lead(terms: TermDict, key) -> Term:
    return max(terms, key=key)


def _monic(field: FieldSpec, terms: TermDict, lead: Term) -> TermDict:
    lc = terms[lead]
    if lc == field.one:
        return terms
    inv = field.inv(lc)
    mul = field.mul
    return {t: mul(c, inv) for t, c in terms.items()}


def _reduce_full(
    field: FieldSpec,
    terms: TermDict,
    by_position: Dict[int, List[int]],
    leads: Sequence[Term],
    tails: Sequence[TermDict],
    key,
) -> TermDict:
    """Fully reduce ``terms``: no term of the result is divisible by a lead."""
    p = field.characteristic
    work = dict(terms)
    remainder: TermDict = {}
    while work:
        abort_point()
        t = _lead(work, key)
        c = work.pop(t)
        pos, mono = t
        reducer = -1
        for i in by_position.get(pos, ()):
            if mono_divides(leads[i][1], mono):
                reducer = i
                break
        if reducer < 0:
            remainder[t] = c
            continue
        shift = mono_sub(mono, leads[reducer][1])
        # basis elements are monic, so the cofactor is just c
        for (gp, gm), gc in tails[reducer].items():
            tm = mono_mul(gm, shift)
            check_term_degree(sum(tm))
            tt = (gp, tm)
            old = work.get(tt)
            if p:
                v = ((old or 0) - c * gc) % p
            else:
                v = (old if old is not None else 0) - c * gc
            if v:
                work[tt] = v
            elif old is not None:
                del work[tt]
    return remainder


class GroebnerBasis:
    """A reduced Groebner basis of a submodule of ``k[x]^rank``.

    Elements are monic, pairwise autoreduced, and sorted by descending lead
    term, which makes the object canonical for its submodule and order.
    """

    def __init__(
        self,
        field: FieldSpec,
        nvars: int,
        rank: int,
        order: MonomialOrder,
        elements: Sequence[FreeElement],
        reduced: bool = True,
    ):
        self.field = field
        self.nvars = nvars
        self.rank = rank
        self.order = order
        self.elements: Tuple[FreeElement, ...] = tuple(elements)
        self.reduced = reduced
        key = order.term_key()
        self._key = key
        self._leads: List[Term] = []
        self._tails: List[TermDict] = []
        self._by_position: Dict[int, List[int]] = {}
        for i, g in enumerate(self.elements):
            lt = _lead(g.terms, key)
            self._leads.append(lt)
            tail = dict(g.terms)
            del tail[lt]
            self._tails.append(tail)
            self._by_position.setdefault(lt[0], []).append(i)

    def lead_terms(self) -> List[Term]:
        return list(self._leads)

    def normal_form(self, f: FreeElement) -> FreeElement:
        if f.nvars != self.nvars or f.rank != self.rank or f.field != self.field:
            raise DimensionError("element does not match the basis ambient module")
        reduced = _reduce_full(
            self.field, f.terms, self._by_position, self._leads, self._tails, self._key
        )
        return FreeElement(self.field, self.nvars, self.rank, reduced, _normalized=True)

    def contains(self, f: FreeElement) -> bool:
        return self.normal_form(f).is_zero()

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def _spair_degree(lead_i: Term, lead_j: Term) -> int:
    return sum(mono_lcm(lead_i[1], lead_j[1]))


def _buchberger(
    field: FieldSpec,
    nvars: int,
    rank: int,
    gens: Sequence[TermDict],
    key,
) -> Tuple[List[TermDict], List[Term]]:
    """Completion loop.  Returns monic basis dicts and their lead terms."""
    p = field.characteristic
    basis: List[TermDict] = []
    leads: List[Term] = []
    tails: List[TermDict] = []
    by_position: Dict[int, List[int]] = {}

    def push(terms: TermDict) -> int:
        lt = _lead(terms, key)
        terms = _monic(field, terms, lt)
        i = len(basis)
        basis.append(terms)
        leads.append(lt)
        tail = dict(terms)
        del tail[lt]
        tails.append(tail)
        by_position.setdefault(lt[0], []).append(i)
        return i

    pairs: List[Tuple[int, int, int]] = []
    pending = set()

    def add_pairs(j: int) -> None:
        pos = leads[j][0]
        for i in by_position.get(pos, ()):
            if i == j:
                continue
            heapq.heappush(pairs, (_spair_degree(leads[i], leads[j]), i, j))
            pending.add((i, j))

    for g in gens:
        if g:
            push(dict(g))
    for j in range(len(basis)):
        add_pairs(j)

    while pairs:
        abort_point()
        _, i, j = heapq.heappop(pairs)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        li, lj = leads[i], leads[j]
        if li[0] != lj[0]:
            continue
        # Product criterion is only sound for rank-1 (ideal) inputs.
        if rank == 1 and mono_coprime(li[1], lj[1]):
            continue
        lcm = mono_lcm(li[1], lj[1])
        # Chain criterion: a third element dividing the lcm whose pairs with
        # i and j were both already handled makes this pair redundant.
        skip = False
        for k in by_position.get(li[0], ()):
            if k == i or k == j:
                continue
            if mono_divides(leads[k][1], lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pending and pjk not in pending:
                    skip = True
                    break
        if skip:
            continue
        shift_i = mono_sub(lcm, li[1])
        shift_j = mono_sub(lcm, lj[1])
        spoly: TermDict = {}
        for (gp, gm), gc in basis[i].items():
            t = (gp, mono_mul(gm, shift_i))
            spoly[t] = gc
        for (gp, gm), gc in basis[j].items():
            t = (gp, mono_mul(gm, shift_j))
            old = spoly.get(t)
            if p:
                v = ((old or 0) - gc) % p
            else:
                v = (old if old is not None else 0) - gc
            if v:
                spoly[t] = v
            elif old is not None:
                del spoly[t]
        for t in spoly:
            check_term_degree(sum(t[1]))
        remainder = _reduce_full(field, spoly, by_position, leads, tails, key)
        if remainder:
            add_pairs(push(remainder))
    return basis, leads


def _autoreduce(
    field: FieldSpec,
    basis: List[TermDict],
    leads: List[Term],
    key,
) -> List[TermDict]:
    """Drop redundant leads, then tail-reduce to the canonical reduced basis."""
    order_idx = sorted(range(len(basis)), key=lambda i: key(leads[i]))
    keep: List[int] = []
    for i in order_idx:
        li = leads[i]
        redundant = any(
            leads[j][0] == li[0] and mono_divides(leads[j][1], li[1]) for j in keep
        )
        if not redundant:
            keep.append(i)
    kept = [dict(basis[i]) for i in keep]
    kept_leads = [leads[i] for i in keep]
    by_position: Dict[int, List[int]] = {}
    tails: List[TermDict] = []
    for i, lt in enumerate(kept_leads):
        by_position.setdefault(lt[0], []).append(i)
        tail = dict(kept[i])
        del tail[lt]
        tails.append(tail)
    for i in range(len(kept)):
        lt = kept_leads[i]
        body = dict(kept[i])
        del body[lt]
        # a lead never divides another kept lead or its own tail terms,
        # so excluding element i gives the full reduction
        pos_lists = {
            pos: [j for j in idxs if j != i] for pos, idxs in by_position.items()
        }
        rem = _reduce_full(field, body, pos_lists, kept_leads, tails, key)
        rem[lt] = field.one
        kept[i] = rem
        tail = dict(rem)
        del tail[lt]
        tails[i] = tail
    pairs = sorted(zip(kept_leads, kept), key=lambda lr: key(lr[0]), reverse=True)
    return [terms for _, terms in pairs]


def groebner_basis(
    gens: Sequence[FreeElement],
    order: MonomialOrder = DEFAULT_ORDER,
) -> GroebnerBasis:
    """The reduced Groebner basis of the submodule generated by ``gens``.

    Idempotent: running it on its own output returns an equal basis.
    """
    live = [g for g in gens if not g.is_zero()]
    if not live:
        raise DimensionError("cannot infer the ambient module from no generators")
    field, nvars, rank = live[0].field, live[0].nvars, live[0].rank
    for g in live:
        if g.field != field or g.nvars != nvars or g.rank != rank:
            raise DimensionError("generators live in different modules")
    cached = cache.lookup_groebner(field, nvars, rank, order, live)
    if cached is not None:
        return GroebnerBasis(field, nvars, rank, order, cached, reduced=True)
    key = order.term_key()
    basis, leads = _buchberger(field, nvars, rank, [g.terms for g in live], key)
    reduced = _autoreduce(field, basis, leads, key)
    elements = [
        FreeElement(field, nvars, rank, terms, _normalized=True) for terms in reduced
    ]
    cache.store_groebner(field, nvars, rank, order, live, elements)
    return GroebnerBasis(field, nvars, rank, order, elements, reduced=True)


def empty_basis(
    field: FieldSpec,
    nvars: int,
    rank: int,
    order: MonomialOrder = DEFAULT_ORDER,
) -> GroebnerBasis:
    return GroebnerBasis(field, nvars, rank, order, (), reduced=True)


def normal_form(f: FreeElement, basis: GroebnerBasis) -> FreeElement:
    """Unique remainder of ``f`` on division by the basis."""
    return basis.normal_form(f)


def syzygy_generators(
    columns: Sequence[FreeElement],
    lift: Sequence[FreeElement] = (),
    order: MonomialOrder = DEFAULT_ORDER,
) -> List[FreeElement]:
    """Generators of ``{v : sum v_i columns[i] in <lift>}`` in k[x]^len(columns).

    With an empty ``lift`` this is the kernel of the map defined by the
    columns.  The lift slot is how quotient rings feed in ``I * e_j``.
    Computed by a position-over-term elimination basis on the graph of the
    map: augmented vectors ``columns[i] (+) e_i`` are completed, and the
    basis elements supported purely in the tag block are the syzygies.
    """
    if not columns:
        return []
    field, nvars, rank = columns[0].field, columns[0].nvars, columns[0].rank
    s = len(columns)
    total = rank + s
    aug: List[FreeElement] = []
    for i, col in enumerate(columns):
        if col.field != field or col.nvars != nvars or col.rank != rank:
            raise DimensionError("columns live in different modules")
        vec = col.embedded(total) + FreeElement.unit(field, nvars, total, rank + i)
        aug.append(vec)
    for extra in lift:
        if extra.rank != rank:
            raise DimensionError("lift vectors live in a different module")
        aug.append(extra.embedded(total))
    block_order = MonomialOrder(
        kind=order.kind, module="position-over-term", elim_split=order.elim_split
    )
    gb = groebner_basis(aug, block_order)
    out: List[FreeElement] = []
    for g in gb:
        if all(pos >= rank for pos, _ in g.terms):
            out.append(g.restricted(range(rank, total)))
    return out


def syzygy_matrix(
    rows: Sequence[Sequence[Polynomial]],
) -> List[List[Polynomial]]:
    """Syzygies of an m x n matrix given as rows; returns the columns of
    an n x s matrix S with A*S = 0 whose columns generate the kernel."""
    if not rows:
        return []
    n = len(rows[0])
    for row in rows:
        if len(row) != n:
            raise DimensionError("ragged matrix")
    m = len(rows)
    columns = []
    for j in range(n):
        comps = [rows[i][j] for i in range(m)]
        columns.append(FreeElement.from_components(comps))
    syz = syzygy_generators(columns)
    return [vec.components() for vec in syz]


def ideal_groebner_basis(
    gens: Sequence[Polynomial],
    order: MonomialOrder = DEFAULT_ORDER,
) -> GroebnerBasis:
    live = [polynomial_to_element(g) for g in gens if not g.is_zero()]
    if not live:
        if not gens:
            raise DimensionError("cannot infer the ring from no generators")
        g0 = gens[0]
        return empty_basis(g0.field, g0.nvars, 1, order)
    return groebner_basis(live, order)
