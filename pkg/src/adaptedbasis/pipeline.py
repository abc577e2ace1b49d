"""End-to-end analysis of a cover, stage by stage."""

from __future__ import annotations

from dataclasses import dataclass, field

from .adapted import AdaptedClassification, BlockReport, block_report, classify, restrict
from .errors import BudgetError
from .homology import (
    FixedPointReport,
    HomologyAction,
    HomologyBasis,
    h1_basis,
    homology_action,
    lefschetz_report,
)
from .orbifold import CoverSpec
from .reidemeister_schreier import KernelPresentation, Transversal, build_transversal, kernel_presentation
from .tietze import SimplificationTrace, simplify

STAGES = ("rs", "tietze", "homology", "full")


@dataclass
class CyclicBlocks:
    """Classification relative to ``<q>`` and the block report of ``q``."""

    element: int
    classification: AdaptedClassification
    report: BlockReport | None


@dataclass
class Analysis:
    spec: CoverSpec
    stage: str
    transversal: Transversal
    presentation: KernelPresentation
    trace: SimplificationTrace | None = None
    budget_exceeded: str | None = None
    basis: HomologyBasis | None = None
    action: HomologyAction | None = None
    fixed_points: FixedPointReport | None = None
    classification: AdaptedClassification | None = None
    blocks: dict[int, BlockReport] = field(default_factory=dict)
    cyclic: dict[int, CyclicBlocks] = field(default_factory=dict)


def analyze(spec: CoverSpec, transversal=None, stage: str = "full", basis_order=None) -> Analysis:
    """Run the pipeline up to ``stage``.

    ``transversal`` overrides the breadth-first default; ``basis_order``
    permutes the homology basis before matrices are reported.  A Tietze
    run that exceeds its length budget is kept as a partial result.
    """
    if stage not in STAGES:
        raise ValueError(f"unknown stage {stage!r}; expected one of {STAGES}")
    T = build_transversal(spec, transversal)
    P = kernel_presentation(spec, T)
    out = Analysis(spec, stage, T, P)
    if stage == "rs":
        return out
    try:
        out.trace = simplify(P, spec.genus, spec.n)
    except BudgetError as exc:
        out.trace = exc.trace
        out.budget_exceeded = str(exc)
    if stage == "tietze":
        return out
    out.basis = h1_basis(out.trace.final, spec.genus)
    action = homology_action(spec, T, out.trace, out.basis)
    if basis_order is not None:
        action = action.reordered(resolve_basis_order(basis_order, list(action.basis.names)))
        out.basis = action.basis
    out.action = action
    out.fixed_points = lefschetz_report(action, spec)
    if stage == "homology":
        return out
    G = spec.group
    out.classification = classify(action, G)
    if out.classification.complete:
        out.blocks = {q: block_report(action, out.classification, q) for q in range(G.order)}
    seen: set[frozenset] = set()
    for q in range(G.order):
        if q == G.identity:
            continue
        key = frozenset(G.cyclic_subgroup(q))
        if key in seen:
            continue
        seen.add(key)
        H, sub = restrict(action, G, [q])
        cls = classify(sub, H)
        local = H.embedding.index(q)
        report = block_report(sub, cls, local) if cls.complete else None
        out.cyclic[q] = CyclicBlocks(q, cls, report)
    return out


def resolve_basis_order(order, names) -> list[int]:
    """Accept indices or basis names; return indices."""
    out = []
    for item in order:
        if isinstance(item, int) and not isinstance(item, bool):
            out.append(item)
        elif isinstance(item, str) and item.strip().lstrip("-").isdigit():
            out.append(int(item))
        elif item in names:
            out.append(names.index(item))
        else:
            raise ValueError(f"basis order entry {item!r} is neither an index nor a basis name")
    if sorted(out) != list(range(len(names))):
        raise ValueError(f"basis order must be a permutation of the {len(names)} basis elements")
    return out
