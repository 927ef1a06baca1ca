"""Verification jobs: theorem-level checks and lemma suites with JSON verdict reports.

Reports carry no timings and every collection in them is sorted, so a job
rerun with the same seed produces byte-identical output.  Timings go to the
log instead.
"""

from __future__ import annotations

import logging
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable

from . import cones as cn
from .building import FlagBuilding, JoinBuilding, ThinBuilding, coxeter
from .complex import SimplicialComplex, join
from .coxeter import Cmp, Sign, apartment_angle_oracle, cmp_cos_pairs, cos_sign, distance
from .filtration import LEMMA_CHECKS, Filtration
from .homology import (is_homology_spherical, is_homotopy_CM, pi1_trivial, reduced_homology)
from .metric import JoinPole, classify, vertex_cos_sign, wellposedness_audit
from .specs import (SCHEMA, building_from_spec, canonical, expand_poles, pole_from_spec,
                    pole_label)
from .supports import (cap_complement, hemisphere, hor_ver, is_reducible_by_chambers,
                       root_complement)

log = logging.getLogger(__name__)

PASS, FAIL, ADVISORY, SKIPPED = "pass", "fail", "advisory", "skipped"
LAW_OF_COSINES_TOL = 1e-9


def verdict(name: str, status: str, instances: int = 0, evidence=None, witnesses=None,
            note: str | None = None) -> dict:
    out = {"name": name, "status": status, "instances": instances}
    if evidence is not None:
        out["evidence"] = evidence
    if witnesses:
        out["witnesses"] = witnesses[:20]
        out["witness_count"] = len(witnesses)
    if note:
        out["note"] = note
    return out


def from_witnesses(name, bad, n, evidence=None) -> dict:
    return verdict(name, FAIL if bad else PASS, n, evidence, bad)


def aggregate(entries: list[dict]) -> str:
    st = {e["status"] for e in entries}
    if FAIL in st:
        return FAIL
    if PASS in st:
        return PASS
    if ADVISORY in st:
        return ADVISORY
    return SKIPPED


def _is_irreducible(B) -> bool:
    return not isinstance(B, JoinBuilding) or len(B.parts) == 1


def _top(profile, d) -> int:
    return profile.betti.get(d, 0)


# -- building-level checks ---------------------------------------------------------

def expected_top_betti(B) -> int:
    """Rank of the top homology of the whole building (Steinberg count)."""
    if isinstance(B, JoinBuilding):
        return math.prod(expected_top_betti(f) for f in B.parts)
    if isinstance(B, FlagBuilding):
        return B.q ** (B.n * (B.n + 1) // 2)
    return 1


def check_solomon_tits(B, job) -> dict:
    prof = reduced_homology(B.complex, job["bounds"]["max_cells"])
    d = B.complex.dim()
    ok = is_homology_spherical(B.complex, d, prof) and _top(prof, d) == expected_top_betti(B)
    ev = {"profile": prof.to_json(), "expected_top_betti": expected_top_betti(B)}
    return verdict("solomon-tits", PASS if ok else FAIL, 1, ev,
                   None if ok else [{"profile": prof.to_json()}])


def _edge_length(B) -> dict:
    bad = []
    edges = B.complex.simplices_of_dim(1)
    for e in edges:
        u, v = sorted(e)
        if vertex_cos_sign(B, u, v) == Sign.NEG:
            bad.append({"edge": [u, v]})
    return from_witnesses("edge-length", bad, len(edges))


def _coxeter_parts(B):
    return B.parts if isinstance(B, JoinBuilding) else [B]


def _random_point(cx, rng, C=None, allow_faces=True):
    C = sorted(C if C is not None else rng.choice(cx.complex.facets))
    while True:
        ws = {v: rng.randint(0 if allow_faces else 1, 7) for v in C}
        if any(ws.values()):
            return cx.point({v: w for v, w in ws.items() if w})


def _chamber_diameter(B, rng, samples) -> dict:
    bad, n = [], 0
    for f in _coxeter_parts(B):
        cx = coxeter(f.n)
        # vertex pairs of every Coxeter chamber, exhaustively
        for C in cx.complex.facets:
            for a in C:
                for b in C:
                    n += 1
                    if cos_sign(cx.vectors[a], cx.vectors[b]) == Sign.NEG:
                        bad.append({"chamber": sorted(C), "pair": [a, b]})
        for _ in range(samples):
            C = rng.choice(cx.complex.facets)
            p, q = _random_point(cx, rng, C), _random_point(cx, rng, C)
            n += 1
            if cos_sign(p, q) == Sign.NEG:
                bad.append({"chamber": sorted(C), "points": [str(p.weights), str(q.weights)]})
    return from_witnesses("chamber-diameter", bad, n)


def _retraction_distance(B, rng, samples) -> dict:
    """d(rho u, rho v) <= d(u, v), with equality when u lies in the centre chamber."""
    bad, n = [], 0
    for f in _coxeter_parts(B):
        charts = f.enumerate_apartments()
        verts = f.complex.vertices
        for _ in range(samples):
            chart = rng.choice(charts)
            C = chart.push(rng.choice(chart.cx.complex.facets))
            u, v = rng.choice(verts), rng.choice(verts)
            if rng.random() < 0.25:
                u = rng.choice(sorted(C))
            cx = chart.cx
            (ru,) = f.retract_to_coxeter(chart, C, [u])
            (rv,) = f.retract_to_coxeter(chart, C, [v])
            common = f.common_apartment([u], [v])
            a, b = common.cx.vectors[common.from_b[u]], common.cx.vectors[common.from_b[v]]
            c = cmp_cos_pairs(cx.vectors[ru], cx.vectors[rv], a, b)
            n += 1
            if c == Cmp.LT or (u in C and c != Cmp.EQ):
                bad.append({"u": u, "v": v, "centre": sorted(C), "frame": str(chart.frame)})
    return from_witnesses("retraction-distance", bad, n)


def law_of_cosines_samples(n: int, rank: int, seed: int):
    """Seeded triples of rational points in the Coxeter complex of type A_rank.

    Triples where y or z coincides with x or is antipodal to it have no angle
    at x; they are redrawn, so exactly n usable triples come back.
    """
    cx = coxeter(rank)
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        x, y, z = (_random_point(cx, rng) for _ in range(3))
        if any(_parallel(x.direction, w.direction) for w in (y, z)):
            continue
        out.append((x, y, z))
    return out


def _parallel(a, b) -> bool:
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(i + 1, len(a)))


def law_of_cosines_residual(x, y, z) -> float | None:
    try:
        a, b, g = apartment_angle_oracle(x, y, z)
    except ValueError:
        return None
    rhs = math.cos(a) * math.cos(b) + math.sin(a) * math.sin(b) * math.cos(g)
    return abs(math.cos(distance(y, z)) - rhs)


def _law_of_cosines(B, seed, samples) -> dict:
    ranks = sorted({f.n for f in _coxeter_parts(B)})
    bad, n, skipped, worst = [], 0, 0, 0.0
    for r in ranks:
        for x, y, z in law_of_cosines_samples(samples, r, seed):
            res = law_of_cosines_residual(x, y, z)
            if res is None:
                skipped += 1
                continue
            n += 1
            worst = max(worst, res)
            if res > LAW_OF_COSINES_TOL:
                bad.append({"x": list(x.direction), "y": list(y.direction), "z": list(z.direction)})
    ev = {"tolerance": LAW_OF_COSINES_TOL, "worst_exponent": _exponent(worst),
          "degenerate_skipped": skipped}
    return from_witnesses("law-of-cosines", bad, n, ev)


def _exponent(x: float) -> int | None:
    # order of magnitude only, so the report stays platform independent
    return None if x == 0 else math.floor(math.log10(x))


def _reducibility(B) -> dict:
    got = is_reducible_by_chambers(B)
    want = isinstance(B, JoinBuilding) and len(B.parts) > 1
    return verdict("reducibility-criterion", PASS if got == want else FAIL, len(B.complex.facets),
                   {"reducible": got, "factors": len(_coxeter_parts(B))})


def _cone_boundary(B, rng, samples) -> dict:
    if not _is_irreducible(B):
        return verdict("cone-boundary", SKIPPED, note="cones are built in irreducible buildings")
    f = _coxeter_parts(B)[0]
    triples = []
    for s in f.complex.simplices():
        if not s:
            continue
        for tau in f.opposites_of(s):
            for th in f.complex.star(s).simplices():
                triples.append((s, th, tau))
    exhaustive = len(triples) <= samples
    if not exhaustive:
        triples = rng.sample(triples, samples)
    bad = []
    for s, th, tau in triples:
        bad.extend(cn.boundary_lemma_witnesses(f, s, th, tau))
    e = from_witnesses("cone-boundary", bad, len(triples), {"exhaustive": exhaustive})
    return e


def building_checks(B, job) -> list[dict]:
    checks = job["checks"]
    seed, samples = job["seed"], job["bounds"]["samples"]
    out = []
    if "solomon-tits" in checks:
        out.append(check_solomon_tits(B, job))
    if "lemmas-metric" in checks:
        rng = random.Random(seed)
        out.append(_edge_length(B))
        out.append(_chamber_diameter(B, rng, min(samples, 2000)))
        out.append(_retraction_distance(B, rng, samples))
        out.append(_law_of_cosines(B, seed, samples))
    if "lemmas-supports" in checks:
        out.append(_reducibility(B))
    if "lemmas-cones" in checks:
        out.append(_cone_boundary(B, random.Random(seed + 1), job["bounds"].get("cone_samples", 2000)))
    if "theorem-a" in checks:
        for sup in job["supports"]:
            if "root_complement" in sup:
                out.append(_theorem_a_root(B, sup["root_complement"], job))
    return out


def _theorem_a_root(B, doc, job) -> dict:
    name = f"theorem-a/root-complement:{doc['root'][0]},{doc['root'][1]}"
    if not isinstance(B, ThinBuilding):
        return verdict(name, SKIPPED, note="root complements are defined for thin buildings")
    S = root_complement(B, tuple(doc["root"]), bool(doc.get("closed", False)))
    return _theorem_a_instance(B, S.complex, name, job, thick=False)


# -- per-pole checks --------------------------------------------------------------

def _theorem_a_instance(B, K: SimplicialComplex, name, job, thick: bool, advisory=None) -> dict:
    if K.is_empty():
        return verdict(name, PASS, 1, {"empty": True}, note="empty support")
    v = is_homotopy_CM(K, job["bounds"]["max_cells"])
    d = B.complex.dim()
    ev = {"cm": v.to_json(), "expected_dim": d}
    bad = []
    if not v.homotopy_CM or v.dim != d:
        bad.append({"issue": "not homotopy-CM of full dimension", "dim": v.dim,
                    "link_failures": v.link_failures[:5]})
    if thick and d >= 1:
        ev["top_betti"] = _top(v.profile, d)
        if not _top(v.profile, d):
            bad.append({"issue": "top homology vanishes"})
    else:
        ev["noncontractible"] = "skipped: building not thick or dimension 0"
    status = FAIL if bad else PASS
    if advisory and status == PASS:
        status = ADVISORY
    return verdict(name, status, 1, ev, bad, advisory)


def theorem_a(B, x, job) -> list[dict]:
    thick = B.is_thick()
    cls = classify(B, x)
    out = [_theorem_a_instance(B, hemisphere(B, x, "GE", cls).complex, "theorem-a/closed-hemisphere",
                               job, thick)]
    for sup in job["supports"]:
        if "cap_complement" not in sup:
            continue
        doc = sup["cap_complement"]
        t = Fraction(doc["t"])
        closed = bool(doc.get("closed", False))
        name = f"theorem-a/cap-complement:{t}:{'closed' if closed else 'open'}"
        try:
            S = cap_complement(B, x, t, closed)
        except NotImplementedError as exc:
            out.append(verdict(name, SKIPPED, note=str(exc)))
            continue
        note = "; ".join(S.notes) if S.notes else None
        out.append(_theorem_a_instance(B, S.complex, name, job, thick, note))
    return out


def theorem_b(B, x, job) -> list[dict]:
    cls = classify(B, x)
    if not B.is_thick():
        # gated, but the profile is still recorded for inspection
        gt = hemisphere(B, x, "GT", cls).complex
        prof = reduced_homology(gt, job["bounds"]["max_cells"])
        ev = {"classes": cls.counts(), "profile": prof.to_json(),
              "f_vector": [] if gt.is_empty() else list(gt.f_vector())}
        return [verdict("theorem-b", SKIPPED, 0, ev, note="building is not thick")]
    gt = hemisphere(B, x, "GT", cls).complex
    hor, ver = hor_ver(B, x, cls)
    dver = ver.dim()
    v = is_homotopy_CM(gt, job["bounds"]["max_cells"])
    ev = {"classes": cls.counts(), "f_vector": list(gt.f_vector()) if not gt.is_empty() else [],
          "cm": v.to_json(), "expected_dim": dver, "top_betti": _top(v.profile, dver)}
    if dver >= 2:
        ev["pi1"] = pi1_trivial(gt)
    bad = []
    if not v.homotopy_CM or v.dim != dver:
        bad.append({"issue": "open hemisphere complex not homotopy-CM of dim ver", "dim": v.dim})
    if not _top(v.profile, dver):
        bad.append({"issue": "top homology vanishes"})
    out = [verdict("theorem-b/open-hemisphere", FAIL if bad else PASS, 1, ev, bad)]
    if not _is_irreducible(B) or isinstance(x, JoinPole):
        out.append(verdict("theorem-b/filtration-pipeline", SKIPPED,
                           note="filtration pipeline runs on irreducible buildings"))
        return out
    out.extend(filtration_pipeline(B, x, cls))
    return out


def filtration_pipeline(B, x, cls) -> list[dict]:
    F = Filtration(B, x, cls)
    d = B.complex.dim()
    eq = F.equator
    ev = {"N": F.N, "equator_f_vector": [] if eq.is_empty() else list(eq.f_vector()),
          "equator_components": len(eq.components()) if not eq.is_empty() else 0,
          "stages": F.summary()["stages"]}
    bad, n = LEMMA_CHECKS["stage-decomposition"](F)
    out = [from_witnesses("theorem-b/stages", bad, n, ev)]
    # K_sigma for every nonempty image simplex
    rows, bad = [], []
    for s in F.image:
        if not s:
            continue
        h = F.heights[s]
        try:
            ks = cn.build_k_sigma(F, s, x)
        except LookupError as exc:
            bad.append({"sigma": sorted(s), "issue": str(exc)})
            continue
        Fh, Fh1 = set(F.stage(h).simplices()), set(F.stage(h - 1).simplices())
        Ks, Kp = set(ks.K.simplices()), set(ks.K_prime.simplices())
        star_ok = {u for u in Ks if s <= u} == {u for u in Fh if s <= u}
        glue = is_homology_spherical(ks.K_prime, d)
        row = {"sigma": sorted(s), "height": h, "case": ks.case,
               "routes": sorted(g.route for g in ks.opposites),
               "opposites": sorted(sorted(g.tau) for g in ks.opposites),
               "in_stage": Ks <= Fh, "prime_is_trace": Kp == Ks & Fh1,
               "star_matches": star_ok, "prime_spherical": glue}
        rows.append(row)
        if not (row["in_stage"] and row["prime_is_trace"] and star_ok and glue):
            bad.append(row)
    out.append(from_witnesses("theorem-b/good-opposites", bad, len(rows), {"k_sigma": rows}))
    # two opposites in the open hemisphere for every height-one vertex
    pairs, bad = [], []
    for t in F.I(1):
        if len(t) != 1:
            continue
        (y,) = t
        r = cn.antipode_pair(F, y, x)
        pairs.append(r)
        if len(r["gt_opposites"]) < 2 or not r["constructed_ok"]:
            bad.append(r)
    out.append(from_witnesses("theorem-b/antipode-pairs", bad, len(pairs), {"pairs": pairs}))
    return out


def lemmas_metric_pole(B, x, job) -> list[dict]:
    a = wellposedness_audit(B, x)
    return [verdict("retraction-wellposed", FAIL if a["disagreements"] else PASS, a["choices"],
                    {"vertices": a["vertices"]}, a["disagreements"])]


def lemmas_supports_pole(B, x, job) -> list[dict]:
    cls = classify(B, x)
    X = B.complex
    ge = hemisphere(B, x, "GE", cls).complex
    gt = hemisphere(B, x, "GT", cls).complex
    eqc = hemisphere(B, x, "EQ", cls).complex
    out = []
    bad = []
    if not (gt <= ge and eqc <= ge) or (set(gt.vertices) & set(eqc.vertices)):
        bad.append({"issue": "hemisphere containments"})
    for C in (ge, gt, eqc):
        if C != X.full_subcomplex(C.vertices):
            bad.append({"issue": "not a full subcomplex"})
    try:
        if cap_complement(B, x, 0).complex != ge or cap_complement(B, x, 0, True).complex != gt:
            bad.append({"issue": "cap complement at t = 0 differs from a hemisphere complex"})
    except NotImplementedError:
        pass
    out.append(from_witnesses("supports-full", bad, 3))
    out.append(_open_ball_antipodes(B, cls))
    if _is_irreducible(B):
        ok = gt.dim() == X.dim()
        out.append(verdict("open-hemisphere-dimension", PASS if ok else FAIL, 1,
                           {"dim": gt.dim()}, None if ok else [{"dim": gt.dim()}]))
        out.append(_closed_chamber_in_apartments(B, cls))
    else:
        out.append(_join_law(B, x, cls, gt, eqc))
    return out


def _open_ball_antipodes(B, cls) -> dict:
    # an open ball of radius pi/2 holds no antipodal vertex pair; vertex-level only, so advisory
    bad, n = [], 0
    parts = _coxeter_parts(B)
    for k, f in enumerate(parts):
        off = B.voff[k] if isinstance(B, JoinBuilding) else 0
        lt = {v - off for v in cls.lt if 0 <= v - off < len(f.complex.vertices)}
        for v in sorted(lt):
            for z in f.opposites_of([v]):
                n += 1
                if z <= lt:
                    bad.append({"pair": [v + off, min(z) + off]})
    e = from_witnesses("open-ball-antipodes", bad, n)
    if e["status"] == PASS:
        e["status"] = ADVISORY
        e["note"] = "vertex-level surrogate for general open convex sets"
    return e


def _closed_chamber_in_apartments(B, cls) -> dict:
    bad, n = [], 0
    for chart in B.enumerate_apartments():
        img = chart.image
        if not img & cls.ge:
            continue
        n += 1
        if not any(chart.push(C) <= cls.ge for C in chart.cx.complex.facets):
            bad.append({"frame": str(chart.frame)})
    return from_witnesses("apartment-closed-chamber", bad, n)


def _join_law(B, x, cls, gt, eqc) -> dict:
    parts_gt, bad = [], []
    for k, f in enumerate(B.parts):
        off = B.voff[k]
        if x.parts[k] is None:
            sub = set()
        else:
            sub = {v + off for v in classify(f, x.parts[k]).gt}
        parts_gt.append(B.complex.full_subcomplex(sub))
    J = parts_gt[0]
    for P in parts_gt[1:]:
        J = join(J, P)
    if J != gt:
        bad.append({"issue": "open hemisphere is not the join of factor-wise ones"})
    hor, ver = hor_ver(B, x, cls)
    ver_eq = ver.full_subcomplex(set(ver.vertices) & cls.eq) if not ver.is_empty() else ver
    if join(ver_eq, hor) != eqc:
        bad.append({"issue": "equator is not ver-equator joined with hor"})
    return from_witnesses("join-law", bad, 2)


def lemmas_filtration_pole(B, x, job) -> list[dict]:
    F = Filtration(B, x)
    out = []
    for name, fn in LEMMA_CHECKS.items():
        bad, n = fn(F)
        out.append(from_witnesses(name, bad, n))
    return out


def lemmas_cones_pole(B, x, job) -> list[dict]:
    if not _is_irreducible(B) or isinstance(x, JoinPole):
        return [verdict("cones", SKIPPED, note="cones are built in irreducible buildings")]
    F = Filtration(B, x)
    limit = job["bounds"].get("opposite_limit", 64)
    south_bad, south_n = [], 0
    for s in F.equator.simplices():
        if not s:
            continue
        L = F.ge.boundary_of_star(s)
        for tau in sorted(B.opposites_of(s), key=sorted)[:limit]:
            south_n += 1
            K = cn.cone(B, s, L, tau)
            if not K <= F.ge:
                south_bad.append({"sigma": sorted(s), "tau": sorted(tau)})
    out = [from_witnesses("cone-in-closed-hemisphere", south_bad, south_n)]
    contr_bad, cond_bad, proj_bad = [], [], []
    routes: dict[str, int] = {}
    n_img = n_proj = 0
    for s in F.image:
        if not s:
            continue
        n_img += 1
        L = cn.link_open_hemisphere(B, F.cls, s)
        try:
            g = cn.find_good_opposite(F, s, L, x)
        except LookupError as exc:
            cond_bad.append({"sigma": sorted(s), "issue": str(exc)})
            continue
        routes[g.route] = routes.get(g.route, 0) + 1
        if not g.route.startswith("apartment-intersection"):
            cond_bad.append({"sigma": sorted(s), "issue": "constructive route failed", "route": g.route})
        Kp = cn.cone(B, s, L, g.tau, "K'")
        dim_want = len(s) - 1 + L.dim() + 1
        prof = reduced_homology(Kp)
        if not prof.is_zero() or Kp.dim() != dim_want:
            contr_bad.append({"sigma": sorted(s), "tau": sorted(g.tau), "dim": Kp.dim(),
                              "expected_dim": dim_want, "profile": prof.to_json()})
        for tau in sorted(B.opposites_of(s), key=sorted)[:limit]:
            ok, _ = cn._containment_ok(F, s, L, tau)
            n_proj += 1
            if not ok and cn.proj_condition_witness(F, s, L, tau) is None:
                proj_bad.append({"sigma": sorted(s), "tau": sorted(tau)})
    out.append(from_witnesses("cones-contractible", contr_bad, n_img))
    out.append(from_witnesses("apartment-condition", cond_bad, n_img,
                              {"routes": dict(sorted(routes.items()))}))
    out.append(from_witnesses("proj-condition", proj_bad, n_proj))
    return out


POLE_CHECKS: dict[str, Callable] = {
    "theorem-a": theorem_a,
    "theorem-b": theorem_b,
    "lemmas-metric": lemmas_metric_pole,
    "lemmas-supports": lemmas_supports_pole,
    "lemmas-filtration": lemmas_filtration_pole,
    "lemmas-cones": lemmas_cones_pole,
}


def run_pole(job: dict, pole_doc) -> dict:
    B = building_from_spec(job["building"])
    t0 = time.perf_counter()
    x = pole_from_spec(B, pole_doc)
    entries = []
    for c in job["checks"]:
        fn = POLE_CHECKS.get(c)
        if fn is not None:
            entries.extend({"check": c, **e} for e in fn(B, x, job))
    log.info("pole %s done in %.2fs", pole_label(pole_doc), time.perf_counter() - t0)
    return {"pole": pole_label(pole_doc), "spec": pole_doc, "describe": _describe(x),
            "results": entries}


def _describe(x):
    d = x.describe()
    return d


def run_job(job: dict, jobs: int = 1) -> dict:
    t0 = time.perf_counter()
    B = building_from_spec(job["building"])
    poles = expand_poles(B, job["poles"])
    need_poles = any(c in POLE_CHECKS for c in job["checks"])
    header = {
        "spec": job["building"],
        "dim": B.complex.dim(),
        "f_vector": list(B.complex.f_vector()),
        "thick": B.is_thick(),
        "irreducible": _is_irreducible(B),
    }
    global_entries = building_checks(B, job)
    pole_reports = []
    if need_poles:
        if jobs > 1 and len(poles) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                pole_reports = list(ex.map(run_pole, [job] * len(poles), poles))
        else:
            pole_reports = [run_pole(job, p) for p in poles]
    all_entries = [e for e in global_entries] + [e for r in pole_reports for e in r["results"]]
    counts = {s: sum(1 for e in all_entries if e["status"] == s)
              for s in (PASS, FAIL, ADVISORY, SKIPPED)}
    log.info("job finished in %.2fs", time.perf_counter() - t0)
    return {
        "schema": SCHEMA,
        "job": job,
        "building": header,
        "global": global_entries,
        "poles": pole_reports,
        "summary": counts,
        "status": FAIL if counts[FAIL] else PASS,
    }


def dumps_report(report: dict) -> str:
    return canonical(report) + "\n"


def verify_theorem_a(job: dict, jobs: int = 1) -> dict:
    return run_job({**job, "checks": ["theorem-a"]}, jobs)


def verify_theorem_b(job: dict, jobs: int = 1) -> dict:
    return run_job({**job, "checks": ["theorem-b"]}, jobs)


def verify_lemmas(job: dict, jobs: int = 1) -> dict:
    return run_job({**job, "checks": ["lemmas-metric", "lemmas-supports", "lemmas-filtration",
                                      "lemmas-cones"]}, jobs)


def entries(report: dict, name_prefix: str = "") -> list[dict]:
    """Flatten a report into its verdict entries, optionally filtered by name prefix."""
    out = list(report["global"]) + [e for r in report["poles"] for e in r["results"]]
    return [e for e in out if e["name"].startswith(name_prefix)]
