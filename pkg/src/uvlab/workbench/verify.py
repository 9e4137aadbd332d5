"""Exhaustive theorem verifier.

Every check runs on a JSON-friendly *instance* so a failure can be written
out as ``{"theorem", "instance", "faults"}`` and replayed later.  Instances
are independent; with ``jobs > 1`` they fan out to worker processes and the
results come back in instance order.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .. import faults, limits
from ..applications import (all_regular_partitions, embed_bn, realizes_all_signatures,
                            regular_partition, split_complete)
from ..balg import (ba_from_tables, compose_homs, enumerate_homs,
                    enumerate_proper_filters, identity_hom, is_injective,
                    powerset_ba, tables_of)
from ..dictionary import all_rows, check_sum_product
from ..duality import (check_injective_surjective_duality, check_representation,
                       check_squares, check_squares_space, dual_hom, dual_map,
                       epsilon, hat, is_homeomorphic, uv_dual)
from ..errors import CounterexampleError, SizeLimit, UvlabError
from ..hyperlocale import (hyperspace_homeomorphism, check_same_topologies,
                           check_uv_iff_locale, complemented_elements,
                           discrete_space, filt_locale, upper_vietoris_of_locale)
from ..order import neg_le, ro_algebra
from ..uvspace import (FiniteSpace, co, compose_maps, coro, coro_algebra,
                       coro_family_algebra, cro, identity_map, is_uv_space, oro,
                       ro, star)
from .enumerate import brute_force_posets, posets_of_size, sample_posets
from .io import emit_poset

CHUNK = 500
MAX_PARTITION_ATOMS = 3  # dual spaces of at most 7 points


def _fail(theorem, **witness):
    raise CounterexampleError(theorem, witness)


def _posets(inst):
    if "sample" in inst:
        pool = sample_posets(inst["size"], inst["sample"], inst.get("seed", 0))
    else:
        pool = posets_of_size(inst["size"])
    return pool[inst.get("start", 0):inst.get("stop", len(pool))]


# -- checks -----------------------------------------------------------------

def check_representation_instance(inst):
    check_representation(powerset_ba(inst["atoms"]))


def check_round_trip(inst):
    A = powerset_ba(inst["atoms"])
    X = uv_dual(A).space
    epsilon(X)
    if coro_algebra(X).k != A.k:
        _fail("round trip keeps the atom count", atoms=A.k)
    B, _ = ba_from_tables(**tables_of(A))
    if B.k != A.k:
        _fail("table round trip keeps the atom count", atoms=A.k)


def check_characterization(inst):
    for P in _posets(inst):
        X = FiniteSpace(P)
        uv = bool(is_uv_space(X))
        A = coro_family_algebra(X)
        back = is_homeomorphic(X, uv_dual(A).space)
        doc = emit_poset(P)
        if uv != back:
            _fail("UV-space iff homeomorphic to the dual of CORO", poset=doc, uv=uv)
        if uv and not is_homeomorphic(X, uv_dual(powerset_ba(A.k)).space):
            _fail("UV-spaces are duals of power set algebras", poset=doc)
        if uv and X.n not in (1, 3, 7, 15, 31, 63):
            _fail("UV-spaces have 2^k - 1 points", poset=doc)
        if not check_uv_iff_locale(X):
            _fail("UV-space iff upper Vietoris space of a Stone locale", poset=doc)


def check_collapse(inst):
    X = uv_dual(powerset_ba(inst["atoms"])).space
    fams = {"coro": coro(X), "cro": cro(X), "ro": ro(X), "oro": oro(X)}
    if len({tuple(v) for v in fams.values()}) != 1:
        _fail("coro = cro = ro = oro", atoms=inst["atoms"],
              sizes={k: len(v) for k, v in fams.items()})


def check_star_neg(inst):
    for P in _posets(inst):
        X = FiniteSpace(P)
        for U in co(X):
            s, n = star(X, U), neg_le(P, U)
            for clause, extra in (("star(U) ⊆ ¬U", s & ~n), ("¬U ⊆ star(U)", n & ~s)):
                if extra:
                    _fail(clause, poset=emit_poset(P), U=X.names(U),
                          star=X.names(s), neg=X.names(n))


def _hat_element(A, a):
    """``hat(a)`` as an element of the CORO algebra of the dual."""
    D = uv_dual(A)
    C = coro_algebra(D.space)
    return C.origin.index(hat(D, a))


def check_functors(inst):
    a, b, c = inst["atoms"]
    A, B, C = powerset_ba(a), powerset_ba(b), powerset_ba(c)
    if dual_hom(identity_hom(A)) != identity_map(uv_dual(A).space):
        _fail("dual of identity is identity", atoms=a)
    if dual_map(identity_map(uv_dual(A).space)) != identity_hom(coro_algebra(uv_dual(A).space)):
        _fail("dual of identity map is identity", atoms=a)
    for h in enumerate_homs(A, B):
        f = dual_hom(h)
        back = dual_map(f)
        for x in A.elements():
            if back.table[_hat_element(A, x)] != _hat_element(B, h.table[x]):
                _fail("double dual of a homomorphism is itself", hom=list(h.table),
                      a=A.element_name(x))
        check_squares(h)
        check_squares_space(f)
        rep = check_injective_surjective_duality(h)
        if not rep:
            _fail("injective/surjective duality", hom=list(h.table), **rep.as_dict())
        for g in enumerate_homs(B, C):
            if dual_hom(compose_homs(g, h)) != compose_maps(f, dual_hom(g)):
                _fail("dual of g∘h is h₊∘g₊", h=list(h.table), g=list(g.table))


def check_hyperspace(inst):
    n = inst["points"]
    f = hyperspace_homeomorphism(discrete_space(n))
    if not is_homeomorphic(f.dom, uv_dual(powerset_ba(n)).space):
        _fail("hyperspace of a discrete space is the dual of the power set", points=n)


def check_locale(inst):
    A = powerset_ba(inst["atoms"])
    L = filt_locale(A)
    if complemented_elements(L).k != A.k:
        _fail("complemented filters recover the algebra", atoms=A.k)
    check_same_topologies(A)
    if not is_homeomorphic(upper_vietoris_of_locale(L), uv_dual(A).space):
        _fail("upper Vietoris space of Filt is the dual", atoms=A.k)


def check_dictionary(inst):
    for r in all_rows(powerset_ba(inst["atoms"])):
        if not r.passed:
            _fail(f"dictionary row {r.row}", **r.as_dict())


def check_sums(inst):
    a, b = inst["atoms"]
    r = check_sum_product(powerset_ba(a), powerset_ba(b))
    if not r.passed:
        _fail("sum of duals is dual of product", **r.as_dict())


def check_partitions(inst):
    X = uv_dual(powerset_ba(inst["atoms"])).space
    for n in range(inst["atoms"]):
        regular_partition(X, n)
    for blocks in all_regular_partitions(X):
        if not realizes_all_signatures(X, blocks):
            _fail("every nonempty index set is a signature", blocks=[X.names(U) for U in blocks])


def check_embedding(inst):
    X = uv_dual(powerset_ba(inst["atoms"])).space
    f, e = embed_bn(X, inst["n"])
    if not is_injective(e):
        _fail("embedding is injective", **inst)


def check_complete_split(inst):
    X = uv_dual(powerset_ba(inst["atoms"])).space
    s = split_complete(X)
    if s.atomless is not None:
        _fail("finite UV-spaces are atomic", atoms=inst["atoms"])


def check_oracles(inst):
    if "atoms" in inst:
        A = powerset_ba(inst["atoms"])
        principal = sorted(sorted(A.up(a)) for a in A.nonzero())
        if sorted(map(sorted, enumerate_proper_filters(A))) != principal:
            _fail("proper filters are the principal ones", atoms=A.k)
        return
    n = inst["size"]
    if "brute" in inst:
        if len(posets_of_size(n)) != len(brute_force_posets(n)):
            _fail("poset enumeration agrees with the relation filter", size=n)
        return
    for P in _posets(inst):
        ro_algebra(P)  # validates the axioms


CHECKS = {
    "representation": check_representation_instance,
    "round-trip": check_round_trip,
    "characterization": check_characterization,
    "collapse": check_collapse,
    "star-neg": check_star_neg,
    "functors": check_functors,
    "hyperspace": check_hyperspace,
    "locale": check_locale,
    "dictionary": check_dictionary,
    "sum-product": check_sums,
    "partitions": check_partitions,
    "embedding": check_embedding,
    "complete-split": check_complete_split,
    "oracles": check_oracles,
}


# -- instances ----------------------------------------------------------------

def _poset_chunks(max_poset, sample, seed):
    out = []
    for n in range(1, max_poset + 1):
        if n <= 5:
            total = len(posets_of_size(n))
            out += [{"size": n, "start": s, "stop": min(s + CHUNK, total)}
                    for s in range(0, total, CHUNK)]
        else:
            out.append({"size": n, "sample": sample, "seed": seed})
    return out


def instances(theorem, max_atoms, max_poset, sample=200, seed=0):
    K, N = max_atoms, max_poset
    atoms = [{"atoms": k} for k in range(1, K + 1)]
    if theorem in ("representation", "round-trip", "complete-split"):
        return atoms
    if theorem == "characterization":
        return _poset_chunks(N, sample, seed)
    if theorem == "star-neg":
        return _poset_chunks(min(N, 5), sample, seed)
    if theorem == "collapse":
        return atoms[:MAX_PARTITION_ATOMS]
    if theorem == "functors":
        r = range(1, min(K, 3) + 1)
        return [{"atoms": [a, b, c]} for a in r for b in r for c in r]
    if theorem == "hyperspace":
        return [{"points": n} for n in range(1, min(K, 4) + 1)]
    if theorem in ("locale", "dictionary"):
        return atoms[:4]
    if theorem == "sum-product":
        return [{"atoms": [a, b]} for a in range(1, K) for b in range(1, K)
                if a + b <= min(K, 4)]
    if theorem == "partitions":
        return atoms[:MAX_PARTITION_ATOMS]
    if theorem == "embedding":
        return [{"atoms": k, "n": n} for k in range(1, min(K, 5) + 1) for n in range(1, k + 1)]
    if theorem == "oracles":
        return atoms + [{"size": n, "brute": True} for n in range(1, min(N, 4) + 1)] \
            + _poset_chunks(min(N, 5), sample, seed)
    raise KeyError(theorem)


# -- running ------------------------------------------------------------------

def _limits_snapshot() -> dict:
    return {k: getattr(limits, k) for k in ("MAX_ATOMS", "MAX_POSET_LABELED",
                                            "MAX_POSET_ISO", "MAX_HOMS")}


def run_one(theorem, instance, fault_names=(), limit_values=None) -> dict:
    """Run one check; never raises for mathematical failures."""
    if limit_values:
        for k, v in limit_values.items():
            setattr(limits, k, v)
    record = {"theorem": theorem, "instance": instance, "passed": True}
    start = time.perf_counter()
    try:
        with faults.injected(*fault_names):
            CHECKS[theorem](instance)
    except CounterexampleError as exc:
        record.update(passed=False, failure=exc.theorem, witness=exc.witness)
    except UvlabError as exc:
        record.update(passed=False, failure=type(exc).__name__, witness={"message": str(exc)})
    record["seconds"] = time.perf_counter() - start
    if not record["passed"]:
        record["replay"] = {"theorem": theorem, "instance": instance,
                            "faults": sorted(fault_names)}
    return record


def _run_task(task):
    return run_one(*task)


@dataclass
class VerificationRun:
    bounds: dict
    theorems: list
    records: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.records)

    def per_theorem(self) -> dict:
        out = {}
        for r in self.records:
            s = out.setdefault(r["theorem"], {"instances": 0, "failed": 0, "seconds": 0.0})
            s["instances"] += 1
            s["failed"] += not r["passed"]
            s["seconds"] += r["seconds"]
        return out

    def failures(self) -> list:
        return [r for r in self.records if not r["passed"]]

    def jsonl_records(self) -> list[dict]:
        """Records without timings, so equal runs print equal bytes."""
        return [{k: v for k, v in r.items() if k != "seconds"} for r in self.records]


def verify_all(max_atoms=3, max_poset=5, theorems=None, jobs=1, seed=0, sample=200,
               fault_names=()) -> VerificationRun:
    if max_atoms > limits.MAX_ATOMS:
        raise SizeLimit(f"{max_atoms} atoms exceeds the limit of {limits.MAX_ATOMS}")
    if max_poset > limits.MAX_POSET_LABELED:
        raise SizeLimit(f"posets of {max_poset} elements exceed the limit of "
                        f"{limits.MAX_POSET_LABELED}")
    names = list(theorems) if theorems else list(CHECKS)
    for t in names:
        if t not in CHECKS:
            raise KeyError(f"unknown theorem {t!r}")
    run = VerificationRun({"max_atoms": max_atoms, "max_poset": max_poset,
                           "seed": seed, "sample": sample}, names)
    snapshot = _limits_snapshot()
    tasks = [(t, inst, tuple(fault_names), snapshot)
             for t in names for inst in instances(t, max_atoms, max_poset, sample, seed)]
    start = time.perf_counter()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            run.records = list(pool.map(_run_task, tasks))
    else:
        run.records = [_run_task(t) for t in tasks]
    run.seconds = time.perf_counter() - start
    return run


def replay(payload: dict) -> dict:
    return run_one(payload["theorem"], payload["instance"], tuple(payload.get("faults", ())))
