"""End-to-end classification of GLM groups.

``analyze`` reduces the graph, computes the modular image and decides three
properties of the fundamental group:

* biautomatic   iff the modular image is finite,
* CAT(0)        iff the modular image preserves a positive-definite form,
* residually finite iff the reduced graph is an ascending HNN extension of
  Z^n or the modular image preserves a lattice.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import InternalInconsistency, NotApplicable
from .exact import Lattice, MatQ, SymQ, rat_str
from .graph import from_dict, reduce, spanning_tree, stable_letter, vertex_degree
from .matgroups import (
    NO,
    UNDECIDED,
    YES,
    ClosureCertificate,
    FormCertificate,
    LatticeCertificate,
    MatGroupGens,
    decide_conjugate_into_GLnZ,
    decide_conjugate_into_On,
    decide_finite,
    verify_certificate,
)
from .modular import delta_affine, modular_generators

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Config:
    max_closure: int = None  # None means |GL_n(F_3)|
    max_lattice_iters: int = 64
    lattice_window: int = 8
    averaging_iters: int = 200
    averaging_tol: float = 1e-12
    den_cap: int = 10 ** 6
    witness_depth: int = 2
    tree_ball_cap: int = 100_000
    output_format: str = "text"

    def __post_init__(self):
        for name in ("max_lattice_iters", "lattice_window", "averaging_iters", "den_cap",
                     "witness_depth", "tree_ball_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_closure is not None and self.max_closure < 1:
            raise ValueError("max_closure must be positive")
        if not self.averaging_tol > 0:
            raise ValueError("averaging_tol must be positive")
        if self.output_format not in ("text", "json"):
            raise ValueError("output_format must be 'text' or 'json'")


# serialisation helpers --------------------------------------------------------


def matrix_strings(m):
    return [[rat_str(x) for x in r] for r in m.rows]


def matrix_from_strings(rows):
    return MatQ([[Fraction(x) for x in r] for r in rows])


def certificate_to_dict(cert):
    if isinstance(cert, FormCertificate):
        return {"kind": "form", "data": matrix_strings(cert.S)}
    if isinstance(cert, LatticeCertificate):
        return {"kind": "lattice", "data": matrix_strings(cert.L.basis)}
    if isinstance(cert, ClosureCertificate):
        return {"kind": "closure",
                "data": {"order": cert.order,
                         "elements": [matrix_strings(x) for x in cert.elements]}}
    raise TypeError(f"unknown certificate {cert!r}")


def certificate_from_dict(doc):
    kind = doc["kind"]
    data = doc["data"]
    if kind == "form":
        return FormCertificate(SymQ(matrix_from_strings(data).rows))
    if kind == "lattice":
        return LatticeCertificate(Lattice.from_basis(matrix_from_strings(data)))
    if kind == "closure":
        return ClosureCertificate(int(data["order"]),
                                  tuple(matrix_from_strings(x) for x in data["elements"]))
    raise ValueError(f"unknown certificate kind {kind!r}")


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return rat_str(x)
    if isinstance(x, MatQ):
        return matrix_strings(x)
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def _word_str(word, edge_ids):
    parts = []
    for i, s in word:
        letter = stable_letter(edge_ids[i])
        parts.append(letter if s == 1 else f"{letter}^-1")
    return " ".join(parts)


# pipeline ----------------------------------------------------------------------


def image_generators(g, tree=None):
    """Edge ids and matrices generating the modular image of g."""
    tree = spanning_tree(g) if tree is None else tree
    rep = modular_generators(g, tree)
    pairs = rep.generators()
    return [eid for eid, _ in pairs], MatGroupGens(g.rank, tuple(m for _, m in pairs)), rep


def decide_all(group, cfg=Config()):
    fin = decide_finite(group, cap=cfg.max_closure, depth=cfg.witness_depth)
    on = decide_conjugate_into_On(group, finiteness=fin, depth=cfg.witness_depth,
                                  iterations=cfg.averaging_iters, tol=cfg.averaging_tol,
                                  den_cap=cfg.den_cap)
    glz = decide_conjugate_into_GLnZ(group, max_iters=cfg.max_lattice_iters,
                                     window=cfg.lattice_window, depth=cfg.witness_depth)
    return fin, on, glz


def verdict_triple(g, tree=None, cfg=Config()):
    """(finite, O(n)-conjugate, GL_n(Z)-conjugate) statuses for any tree of g."""
    _, group, _ = image_generators(g, tree)
    fin, on, glz = decide_all(group, cfg)
    return (fin.finite, on.status, glz.status)


def is_ascending_hnn(reduced):
    if len(reduced.vertices) != 1 or len(reduced.edges) != 1:
        return False
    e = reduced.edges[0]
    return abs(e.matrix_from.det()) == 1 or abs(e.matrix_to.det()) == 1


@dataclass
class AnalysisReport:
    input: dict
    reduced: dict
    tree: dict
    modular_generators: list
    finiteness: dict
    verdicts: dict
    ascending_hnn: bool
    certificates: dict
    witnesses: dict
    diagnostics: dict
    consistency: dict
    config: dict
    timings: dict = field(default_factory=dict)
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    def to_dict(self):
        d = asdict(self)
        order = ["schema_version", "tool_version", "input", "reduced", "tree",
                 "modular_generators", "finiteness", "verdicts", "ascending_hnn",
                 "certificates", "witnesses", "diagnostics", "consistency", "config", "timings"]
        return {k: d[k] for k in order}

    @classmethod
    def from_dict(cls, doc):
        return cls(**doc)

    def verdict_triple(self):
        v = self.verdicts
        return (v["biautomatic"], v["cat0"], v["residually_finite"])

    def reduced_graph(self):
        return from_dict(self.reduced)

    def undecided(self):
        return [k for k, v in self.verdicts.items() if v == UNDECIDED]


def analyze(g, cfg=Config()):
    timings = {}
    t0 = time.perf_counter()
    red = reduce(g)
    tree = spanning_tree(red)
    timings["reduce"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    edge_ids, group, _ = image_generators(red, tree)
    timings["modular"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    fin, on, glz = decide_all(group, cfg)
    timings["decisions"] = time.perf_counter() - t0

    ascending = is_ascending_hnn(red)
    biaut = YES if fin.finite else NO
    cat0 = on.status
    if ascending or glz.yes:
        rf = YES
    elif glz.no:
        rf = NO
    else:
        rf = UNDECIDED

    certificates, witnesses, diagnostics = {}, {}, {}
    if fin.finite:
        certificates["closure"] = certificate_to_dict(fin.certificate)
    else:
        witnesses["biautomatic"] = {"word": _word_str(fin.witness, edge_ids),
                                    "reason": fin.reason}
    for name, verdict, cert_key in (("cat0", on, "form"), ("residually_finite", glz, "lattice")):
        if verdict.certificate is not None:
            certificates[cert_key] = certificate_to_dict(verdict.certificate)
        if verdict.witness:
            w = dict(verdict.witness)
            if "word" in w:
                w["word"] = _word_str(w["word"], edge_ids)
            # an ascending HNN extension is residually finite regardless
            witnesses["invariant_lattice" if name == "residually_finite" and ascending else name] = w
        if verdict.diagnostics:
            diagnostics[name] = verdict.diagnostics

    consistency = {
        "biautomatic_iff_finite": (biaut == YES) == fin.finite,
        "finite_implies_cat0": (not fin.finite) or cat0 == YES,
        "biautomatic_implies_cat0": biaut != YES or cat0 == YES,
        "finite_implies_lattice": (not fin.finite) or glz.yes,
        "cat0_and_lattice_implies_finite": not (on.yes and glz.yes) or fin.finite,
        "certificates_verify": all(
            verify_certificate(group, c) for c in
            ([fin.certificate] if fin.finite else [])
            + [v.certificate for v in (on, glz) if v.certificate is not None]),
    }
    bad = [k for k, ok in consistency.items() if not ok]
    if bad:
        raise InternalInconsistency(f"report invariants violated: {bad}")

    finiteness = {"finite": fin.finite, "order": fin.order,
                  "witness": None if fin.finite else _word_str(fin.witness, edge_ids),
                  "reason": fin.reason}
    return AnalysisReport(
        input={"rank": g.rank, "vertices": len(g.vertices), "edges": len(g.edges)},
        reduced=red.to_dict(),
        tree={"root": tree.root, "edges": sorted(tree.edges)},
        modular_generators=[{"edge": eid, "matrix": matrix_strings(m)}
                            for eid, m in zip(edge_ids, group.gens)],
        finiteness=finiteness,
        verdicts={"biautomatic": biaut, "cat0": cat0, "residually_finite": rf},
        ascending_hnn=ascending,
        certificates=_jsonable(certificates),
        witnesses=_jsonable(witnesses),
        diagnostics=_jsonable(diagnostics),
        consistency=consistency,
        config=asdict(cfg),
        timings=timings,
    )


def report_group(report):
    """Generators of the modular image, rebuilt from a report."""
    red = report.reduced_graph()
    _, group, _ = image_generators(red)
    return group


def cat0_action_data(report):
    """Data of the action on E^n x T built from a CAT(0) certificate.

    The invariant form S is exact.  The conjugator P = L^T, with S = L L^T a
    floating-point Cholesky factorisation, satisfies P M P^-1 in O(n) up to
    rounding; it is advisory only.
    """
    if report.verdicts["cat0"] != YES:
        raise NotApplicable("the group is not known to be CAT(0)")
    s = certificate_from_dict(report.certificates["form"]).S
    red = report.reduced_graph()
    tree = spanning_tree(red)
    _, group, _ = image_generators(red, tree)
    chol = np.linalg.cholesky(np.array(s.rows, dtype=float))
    p = chol.T
    pinv = np.linalg.inv(p)
    err = 0.0
    for m in group.gens:
        o = p @ np.array(m.rows, dtype=float) @ pinv
        err = max(err, float(np.max(np.abs(o.T @ o - np.eye(group.n)))))
    delta = delta_affine(red, tree)
    affine = {k: {"translation": [rat_str(x) for x in v.translation],
                  "linear": matrix_strings(v.linear)}
              for k, v in sorted(delta.images.items())}
    return {
        "form": matrix_strings(s),
        "conjugator": p.tolist(),
        "orthogonality_error": err,
        "affine_representation": affine,
        "tree_degrees": {v: vertex_degree(red, v) for v in red.vertices},
    }


# text rendering ------------------------------------------------------------------


def _fmt_matrix(rows):
    return "[" + ", ".join("[" + ", ".join(r) + "]" for r in rows) + "]"


def render_text(report):
    lines = []
    inp = report.input
    red = report.reduced
    lines.append(f"rank {inp['rank']}: {inp['vertices']} vertices, {inp['edges']} edge pairs")
    lines.append(f"reduced: {len(red['vertices'])} vertices, {len(red['edges'])} edge pairs"
                 + (" (ascending HNN extension)" if report.ascending_hnn else ""))
    if report.modular_generators:
        for g in report.modular_generators:
            lines.append(f"  Delta(t[{g['edge']}]) = {_fmt_matrix(g['matrix'])}")
    else:
        lines.append("  modular image is trivial")
    fin = report.finiteness
    if fin["finite"]:
        lines.append(f"modular image: finite of order {fin['order']}")
    else:
        lines.append(f"modular image: infinite ({fin['reason']}: {fin['witness']})")
    for key, label in (("biautomatic", "biautomatic"), ("cat0", "CAT(0)"),
                       ("residually_finite", "residually finite")):
        line = f"{label}: {report.verdicts[key]}"
        if key in report.witnesses:
            w = report.witnesses[key]
            line += f"  [{w.get('reason')}" + (f": {w['word']}" if w.get("word") else "") + "]"
        lines.append(line)
    if "form" in report.certificates:
        lines.append(f"invariant form: {_fmt_matrix(report.certificates['form']['data'])}")
    if "lattice" in report.certificates:
        lines.append(f"invariant lattice basis: {_fmt_matrix(report.certificates['lattice']['data'])}")
    for key, diag in report.diagnostics.items():
        if report.verdicts.get(key) == UNDECIDED:
            lines.append(f"{key} diagnostics: {diag}")
    return "\n".join(lines)
