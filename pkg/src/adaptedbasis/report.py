"""Plain-text and JSON renderings of an :class:`~adaptedbasis.pipeline.Analysis`."""

from __future__ import annotations

import numpy as np

from .pipeline import Analysis
from .tietze import SimplificationTrace
from .words import format_word


def _matrix(m) -> list[list[int]]:
    return [[int(x) for x in row] for row in np.asarray(m)]


def _presentation_json(p) -> dict:
    return {
        "generators": p.generator_names(),
        "relators": [format_word(r) for r in p.relators],
    }


def trace_json(trace: SimplificationTrace) -> dict:
    """Machine-readable replay log of a Tietze run."""
    names = trace.initial.alphabet.names
    steps = []
    for step in trace.steps:
        entry = {"kind": step.kind, "relator": step.relator}
        if step.generator is not None:
            entry["generator"] = names[step.generator]
            entry["replacement"] = format_word(step.replacement)
        steps.append(entry)
    return {
        "initial": _presentation_json(trace.initial),
        "steps": steps,
        "final": _presentation_json(trace.final),
        "canonical": trace.canonical,
        "partial": trace.partial,
        "eliminated": {names[i]: format_word(w) for i, w in trace.eliminated.items()},
    }


def _classification_json(cls, names, G) -> dict:
    return {
        "complete": cls.complete,
        "counts": {str(k): v for k, v in sorted(cls.counts().items(), key=lambda kv: str(kv[0]))},
        "ordering": [names[i] for i in cls.ordering],
        "elements": {names[i]: e.to_json(names, G) for i, e in enumerate(cls.elements)},
        "diagnostic": cls.diagnostic,
    }


def _blocks_json(report) -> list[dict]:
    return [{"kind": b.kind, "size": b.size, "matrix": _matrix(b.matrix)} for b in report.blocks]


def to_json(a: Analysis, spec_echo: dict | None = None) -> dict:
    spec = a.spec
    G = spec.group
    out: dict = {}
    if spec_echo is not None:
        out["spec"] = spec_echo
    out["stage"] = a.stage
    out["group_order"] = G.order
    out["genus"] = spec.genus
    out["transversal"] = {G.name(q): str(w) for q, w in enumerate(a.transversal.reps)}
    P = a.presentation
    out["presentation"] = {
        "generators": P.num_generators,
        "relators": len(P.relators),
        "relator_lengths": [len(r) for r in P.relators],
    }
    if a.stage == "rs":
        out["schreier_generators"] = [
            {
                "name": sg.name,
                "coset": G.name(sg.coset),
                "generator": spec.alphabet.names[sg.gen],
                "word": str(sg.word_value),
                "trivial": sg.trivial,
            }
            for sg in a.transversal.table
        ]
        out["relators"] = [
            {"label": label, "relator": format_word(r)} for label, r in zip(P.labels, P.relators)
        ]
        return out
    tr = a.trace
    out["tietze"] = {
        "steps": len(tr.steps),
        "canonical": tr.canonical,
        "partial": tr.partial,
        "budget_exceeded": a.budget_exceeded,
        "final": _presentation_json(tr.final),
    }
    if a.stage == "tietze":
        out["tietze"]["trace"] = [s.describe(tr.initial.alphabet.names) for s in tr.steps]
        return out
    names = list(a.basis.names)
    out["rank"] = a.basis.rank
    out["basis"] = names
    out["matrices"] = {G.name(q): _matrix(a.action[q]) for q in range(G.order)}
    out["fixed_points"] = {G.name(r.element): r.oracle_count for r in a.fixed_points.rows}
    out["lefschetz"] = {G.name(r.element): r.lefschetz_count for r in a.fixed_points.rows}
    out["lefschetz_consistent"] = a.fixed_points.consistent
    if a.stage == "homology":
        return out
    out["classification"] = _classification_json(a.classification, names, G)
    out["blocks"] = {G.name(q): _blocks_json(r) for q, r in a.blocks.items()}
    out["cyclic_blocks"] = {
        G.name(q): {
            "complete": c.classification.complete,
            "counts": {str(k): v for k, v in sorted(c.classification.counts().items(), key=lambda kv: str(kv[0]))},
            "ordering": [names[i] for i in c.classification.ordering],
            "blocks": _blocks_json(c.report) if c.report is not None else None,
        }
        for q, c in a.cyclic.items()
    }
    return out


def _fmt_matrix(m, indent: str = "    ") -> list[str]:
    rows = _matrix(m)
    if not rows:
        return [indent + "[]"]
    width = max(len(str(x)) for row in rows for x in row)
    return [indent + " ".join(str(x).rjust(width) for x in row) for row in rows]


def to_text(a: Analysis) -> str:
    spec = a.spec
    G = spec.group
    lines = [
        f"signature {spec.signature}, group of order {G.order}, genus {spec.genus}",
        "",
        "transversal:",
    ]
    lines += [f"  {line}" for line in a.transversal.describe()]
    P = a.presentation
    lines += ["", f"kernel presentation: {P.num_generators} generators, {len(P.relators)} relators"]
    if a.stage == "rs":
        lines.append("schreier generators:")
        for sg in a.transversal.table:
            flag = "  (trivial)" if sg.trivial else ""
            lines.append(f"  {sg.name} = {sg.word_value}{flag}")
        lines.append("relators:")
        for label, r in zip(P.labels, P.relators):
            lines.append(f"  [{label}] {format_word(r)}")
        return "\n".join(lines) + "\n"
    tr = a.trace
    status = "canonical surface relator" if tr.canonical else "partial"
    lines += ["", f"tietze: {len(tr.steps)} steps, {status}"]
    if a.budget_exceeded:
        lines.append(f"  stopped early: {a.budget_exceeded}")
    if a.stage == "tietze":
        lines += [f"  {s}" for s in tr.describe()]
    lines.append(f"final presentation: {tr.final.describe()}")
    if a.stage == "tietze":
        return "\n".join(lines) + "\n"
    names = list(a.basis.names)
    lines += ["", f"H1 rank {a.basis.rank}; basis: {', '.join(names)}", ""]
    for q in range(G.order):
        lines.append(f"M_{{{G.name(q)}}}:")
        lines += _fmt_matrix(a.action[q])
    lines += ["", "fixed points (oracle / 2 - trace):"]
    for r in a.fixed_points.rows:
        mark = "ok" if r.consistent else "MISMATCH"
        lines.append(f"  {G.name(r.element)}: {r.oracle_count} / {r.lefschetz_count}  {mark}")
    lines.append(f"lefschetz consistent: {'yes' if a.fixed_points.consistent else 'no'}")
    if a.stage == "homology":
        return "\n".join(lines) + "\n"
    cls = a.classification
    lines += ["", "classification:"]
    for i, e in enumerate(cls.elements):
        extra = f"  ({'; '.join(e.failures)})" if e.failures else ""
        lines.append(f"  {names[i]}: type {e.type}{extra}")
    if cls.complete:
        lines.append("suggested order: " + ", ".join(names[i] for i in cls.ordering))
        for q, rep in a.blocks.items():
            kinds = ", ".join(f"{b.kind} {b.size}" for b in rep.blocks)
            lines.append(f"  blocks of {G.name(q)}: {kinds}")
    lines += ["", "cyclic subgroups:"]
    for q, c in a.cyclic.items():
        if c.report is None:
            lines.append(f"  <{G.name(q)}>: not adapted ({len(c.classification.unclassified())} unclassified)")
            continue
        kinds = ", ".join(f"{b.kind} {b.size}" for b in c.report.blocks)
        lines.append(f"  <{G.name(q)}>: {kinds}")
    return "\n".join(lines) + "\n"
