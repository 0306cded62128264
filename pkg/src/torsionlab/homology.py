"""Minimal graded free resolutions, Tor, Koszul complexes, and depth.

Resolutions are built by iterated syzygies over the quotient ring, with a
greedy homogeneous minimal generating set at each step, so differentials
automatically have entries in the irrelevant maximal ideal.  Depth comes
from the vanishing pattern of Koszul homology; projective dimension is
decided against the depth of the ring, which bounds any finite projective
dimension in the graded setting.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .errors import InputError
from .modules import FPModule, present_subquotient, tensor
from .poly import FreeElement, Polynomial
from .rings import RingContext

PD_INFINITE = float("inf")


@dataclass
class FreeResolution:
    """A bounded minimal graded complex of free modules over R."""

    module: FPModule
    differentials: Tuple[Tuple[FreeElement, ...], ...]
    step_degrees: Tuple[Tuple[int, ...], ...]
    complete: bool
    minimal: bool = True

    @property
    def betti(self) -> Tuple[int, ...]:
        return tuple(len(degs) for degs in self.step_degrees)

    @property
    def length(self) -> int:
        return len(self.differentials)

    def betti_table(self) -> str:
        """Fixed textual grid: homological index, total Betti number, and
        the generator degrees of each step."""
        lines = ["i  betti  degrees"]
        for i, degs in enumerate(self.step_degrees):
            shown = ",".join(str(d) for d in sorted(degs))
            lines.append(f"{i}  {len(degs)}  [{shown}]")
        if not self.complete:
            lines.append("(truncated)")
        return "\n".join(lines)


class _ResolutionState:
    __slots__ = ("diffs", "degrees", "complete")

    def __init__(self, diffs, degrees, complete):
        self.diffs: List[Tuple[FreeElement, ...]] = diffs
        self.degrees: List[Tuple[int, ...]] = degrees
        self.complete = complete


def _resolution_state(module: FPModule) -> _ResolutionState:
    if module._resolution is None:
        base = module.minimal().module
        degrees = [tuple(base.gen_degrees)]
        diffs: List[Tuple[FreeElement, ...]] = []
        complete = False
        if base.relations:
            cols = tuple(base.relations)
            diffs.append(cols)
            degrees.append(
                tuple(
                    c.homogeneous_degree(module.ring.grading, base.gen_degrees)
                    for c in cols
                )
            )
        else:
            complete = True
        module._resolution = _ResolutionState(diffs, degrees, complete)
    return module._resolution


def _extend_resolution(module: FPModule, steps: int) -> _ResolutionState:
    from .modules import _minimal_homogeneous_subset

    ring = module.ring
    state = _resolution_state(module)
    while not state.complete and len(state.diffs) < steps:
        last_cols = state.diffs[-1]
        ambient_rank = len(last_cols)
        pos_degrees = state.degrees[len(state.diffs)]
        syz = ring.syzygies(list(last_cols), last_cols[0].rank)
        gens = _minimal_homogeneous_subset(ring, syz, ambient_rank, pos_degrees)
        if not gens:
            state.complete = True
            break
        state.diffs.append(tuple(gens))
        state.degrees.append(
            tuple(
                g.homogeneous_degree(ring.grading, pos_degrees) for g in gens
            )
        )
    return state


def free_resolution(module: FPModule, bound: int) -> FreeResolution:
    """Minimal graded free resolution out to homological degree <= bound."""
    if bound < 0:
        raise InputError("resolution bound must be nonnegative")
    state = _extend_resolution(module, bound)
    take = min(bound, len(state.diffs))
    return FreeResolution(
        module=module,
        differentials=tuple(state.diffs[:take]),
        step_degrees=tuple(state.degrees[: take + 1]),
        complete=state.complete and take == len(state.diffs),
    )


def pd(module: FPModule):
    """Projective dimension, or float('inf').

    A graded module of finite projective dimension resolves within
    depth(R) steps, so a nonzero Betti number past that bound certifies
    infinite projective dimension.
    """
    depth_ring = module.ring.depth()
    res = free_resolution(module, depth_ring + 1)
    if res.complete:
        return res.length
    return PD_INFINITE


# ---------------------------------------------------------------------------
# complexes of the form F (x) N


def _block_ambient(
    n_module: FPModule, shifts: Sequence[int]
) -> Tuple[int, Tuple[int, ...], List[FreeElement]]:
    """Rank, position degrees, and relations of F (x) N for a free module F
    whose generators carry the given degree shifts (one block per shift)."""
    n = n_module.ngens
    copies = len(shifts)
    rank = n * copies
    degrees = tuple(s + d for s in shifts for d in n_module.gen_degrees)
    relations = []
    for b in range(copies):
        for col in n_module.relations:
            relations.append(col.embedded(rank, offset=b * n))
    return rank, degrees, relations


def _induced_columns(
    diff_cols: Sequence[FreeElement], n_module: FPModule
) -> List[FreeElement]:
    """Columns of d (x) N on free covers: block (c, t) -> sum_r d[r][c] e_{(r,t)}."""
    ring = n_module.ring
    n = n_module.ngens
    out = []
    for col in diff_cols:
        target_rank = col.rank * n
        for t in range(n):
            terms = {}
            for (r, mono), coeff in col.terms.items():
                terms[(r * n + t, mono)] = coeff
            out.append(
                FreeElement(ring.field, ring.nvars, target_rank, terms, _normalized=True)
            )
    return out


def _homology_between(
    ring: RingContext,
    incoming: Sequence[FreeElement],
    ambient_rank: int,
    ambient_degrees: Sequence[int],
    ambient_relations: Sequence[FreeElement],
    outgoing: Sequence[FreeElement],
    target_rank: int,
    target_relations: Sequence[FreeElement],
) -> FPModule:
    """Homology ker(outgoing)/im(incoming) at a module C with given data.

    ``outgoing`` are free-cover columns of the map out of C (its count is
    the rank of C); ``incoming`` are columns of the map into C.
    """
    if ambient_rank == 0:
        return FPModule.zero_module(ring)
    if outgoing:
        combined = list(outgoing) + list(target_relations)
        syz = ring.syzygies(combined, target_rank)
        kernel_gens = []
        for vec in syz:
            head = vec.restricted(range(ambient_rank))
            if not head.is_zero():
                kernel_gens.append(head)
    else:
        kernel_gens = [
            FreeElement.unit(ring.field, ring.nvars, ambient_rank, i)
            for i in range(ambient_rank)
        ]
    module, _ = present_subquotient(
        ring,
        ambient_rank,
        tuple(ambient_degrees),
        kernel_gens,
        list(incoming),
        list(ambient_relations),
    )
    return module.minimal().module


def tor(m_module: FPModule, n_module: FPModule, i: int) -> FPModule:
    """Tor_i(M, N) as homology of (minimal resolution of M) tensored with N."""
    if i < 0:
        raise InputError("Tor index must be nonnegative")
    if m_module.ring != n_module.ring:
        raise InputError("Tor needs modules over one ring")
    ring = m_module.ring
    if i == 0:
        return tensor(m_module.minimal().module, n_module).minimal().module
    res = free_resolution(m_module, i + 1)
    betti = res.betti
    if i >= len(betti) or betti[i] == 0:
        return FPModule.zero_module(ring)
    d_i_cols = res.differentials[i - 1]
    d_next_cols = res.differentials[i] if res.length > i else ()
    amb_rank, amb_degrees, amb_relations = _block_ambient(
        n_module, res.step_degrees[i]
    )
    tgt_rank, _, tgt_relations = _block_ambient(n_module, res.step_degrees[i - 1])
    outgoing = _induced_columns(d_i_cols, n_module)
    incoming = _induced_columns(d_next_cols, n_module) if d_next_cols else []
    return _homology_between(
        ring,
        incoming,
        amb_rank,
        amb_degrees,
        amb_relations,
        outgoing,
        tgt_rank,
        tgt_relations,
    )


# ---------------------------------------------------------------------------
# Koszul complexes


@dataclass
class KoszulComplex:
    """The exterior-algebra complex on a sequence of ring elements."""

    elements: Tuple[Polynomial, ...]
    differentials: Tuple[Tuple[FreeElement, ...], ...]

    @property
    def length(self) -> int:
        return len(self.elements)

    def rank(self, i: int) -> int:
        d = self.length
        if 0 <= i <= d:
            from math import comb

            return comb(d, i)
        return 0


def koszul_differentials(
    ring: RingContext, sequence: Sequence[Polynomial]
) -> List[List[FreeElement]]:
    """Columns of d_i : K_i -> K_{i-1} for i = 1..d on the exterior basis.

    Basis vectors of K_i are the sorted i-subsets of the sequence indices;
    d(e_S) = sum over s in S of alternating signs times the element."""
    d = len(sequence)
    diffs: List[List[FreeElement]] = []
    for i in range(1, d + 1):
        source = list(combinations(range(d), i))
        target = list(combinations(range(d), i - 1))
        index = {S: k for k, S in enumerate(target)}
        cols = []
        for S in source:
            vec = FreeElement.zero(ring.field, ring.nvars, len(target))
            for t, s in enumerate(S):
                rest = tuple(x for x in S if x != s)
                unit = FreeElement.unit(
                    ring.field, ring.nvars, len(target), index[rest]
                )
                piece = unit.scaled(sequence[s])
                vec = vec + piece if t % 2 == 0 else vec - piece
            cols.append(vec)
        diffs.append(cols)
    return diffs


def koszul_complex(ring: RingContext, sequence: Sequence[Polynomial]) -> KoszulComplex:
    seq = [ring.normal_form_poly(f) for f in sequence]
    diffs = koszul_differentials(ring, seq)
    return KoszulComplex(tuple(seq), tuple(tuple(c) for c in diffs))


@dataclass
class DepthResult:
    depth: int
    homologies: Dict[int, FPModule]


def koszul_depth(
    sequence: Sequence[Polynomial], module: FPModule
) -> DepthResult:
    """Depth of the ideal generated by the sequence on M, by depth
    sensitivity: depth = d - sup{ i : H_i(K (x) M) != 0 }.

    Also returns every nonzero homology module (minimized).  Requires
    J M != M, which is checked through the minimal generator count of M/JM.
    """
    ring = module.ring
    if not sequence:
        raise InputError("depth needs a nonempty sequence")
    seq = []
    for f in sequence:
        nf = ring.normal_form_poly(f)
        if not nf.is_homogeneous(ring.grading):
            raise InputError("depth sequence must be homogeneous")
        seq.append(nf)
    d = len(seq)
    quotient_rels = list(module.relations)
    for f in seq:
        for i in range(module.ngens):
            quotient_rels.append(
                FreeElement.unit(ring.field, ring.nvars, module.ngens, i).scaled(f)
            )
    m_mod_jm = FPModule(ring, quotient_rels, module.ngens, module.gen_degrees)
    if m_mod_jm.nu() == 0:
        raise InputError("the sequence generates the unit ideal on M: JM = M")

    diffs = koszul_differentials(ring, seq)
    seq_degrees = [f.degree(ring.grading) for f in seq]
    homologies: Dict[int, FPModule] = {0: m_mod_jm.minimal().module}
    for i in range(1, d + 1):
        amb_shifts = [
            sum(seq_degrees[s] for s in S) for S in combinations(range(d), i)
        ]
        tgt_shifts = [
            sum(seq_degrees[s] for s in S) for S in combinations(range(d), i - 1)
        ]
        amb_rank, amb_degrees, amb_relations = _block_ambient(module, amb_shifts)
        tgt_rank, _, tgt_relations = _block_ambient(module, tgt_shifts)
        outgoing = _induced_columns(diffs[i - 1], module)
        incoming = (
            _induced_columns(diffs[i], module) if i < d else []
        )
        h = _homology_between(
            ring,
            incoming,
            amb_rank,
            amb_degrees,
            amb_relations,
            outgoing,
            tgt_rank,
            tgt_relations,
        )
        if h.nu() > 0:
            homologies[i] = h
    top = max(homologies)
    return DepthResult(depth=d - top, homologies=homologies)


def ring_depth(ring: RingContext) -> int:
    """Depth of R along the irrelevant maximal ideal."""
    variables = [ring.variable(i) for i in range(ring.nvars)]
    module = FPModule.free(ring, 1)
    return koszul_depth(variables, module).depth
