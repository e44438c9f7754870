#!/usr/bin/env python
#
# Copyright (c) 2024, Ryan Galloway (ryan@rsgalloway.com)
#
# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are met:
#
#  - Redistributions of source code must retain the above copyright notice,
#    this list of conditions and the following disclaimer.
#
#  - Redistributions in binary form must reproduce the above copyright notice,
#    this list of conditions and the following disclaimer in the documentation
#    and/or other materials provided with the distribution.
#
#  - Neither the name of the software nor the names of its contributors
#    may be used to endorse or promote products derived from this software
#    without specific prior written permission.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS"
# AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE
# IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE
# ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR CONTRIBUTORS BE
# LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR
# CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF
# SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
# INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN
# CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
# ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED OF THE
# POSSIBILITY OF SUCH DAMAGE.
#

__doc__ = """
Contains the verification suites run by `polyfan verify`. Each suite maps a
check over the instances of one theorem and returns sorted reports.
"""

from typing import Callable, Iterable, List, Sequence

from tqdm.contrib.concurrent import thread_map

from polyfan import config
from polyfan.buildingset import (
    check_nested_construction,
    connected_building_sets,
    path_building_set,
    boolean_building_set,
    pullback_building_set,
    star_building_set,
)
from polyfan.caging import Caging, cages_up_to
from polyfan.enums import OrderPolicy, Suite
from polyfan.errors import InvariantViolation, PolyfanError
from polyfan.fan import Fan, fan_validate
from polyfan.flags import (
    blowup_policy_ledger,
    check_blowup,
    check_face_closure,
    check_facet_star,
    check_refinement_chain,
    check_splitting,
    check_subdivision_chain,
    check_tlm_blowup,
    identity_over_coarse_chain,
    polypermutohedral_fan,
    polystellahedral_fan,
    refinement_pairs,
)
from polyfan.lattice import GroundOrder
from polyfan.logger import log
from polyfan.normalfan import check_inner_normal_fan
from polyfan.polymatroid import (
    base_polytope,
    check_polymatroid,
    expansion,
    expansion_lattice_check,
    independence_polytope,
    perm_rank,
    random_rank,
    stellahedron_truncation_check,
)
from polyfan.report import Report, sort_reports

# largest |A| for the brute force face closure and lattice point sweeps
BRUTE_FORCE_MAX = 4

# largest |E| for building set sweeps
BUILDING_SET_MAX = 3

# seeded random polymatroids checked by the normal-fan suite
RANDOM_RANKS = 100


def _guarded(check: Callable[..., Report], name: str) -> Callable:
    """
    Wraps a check so an expected domain error becomes a failed report.
    The wrapped callable takes one tuple of arguments. InvariantViolation is
    re-raised.
    """

    def run(args: tuple):
        try:
            return check(*args)
        except InvariantViolation:
            raise
        except PolyfanError as err:
            report = Report(name, repr(args[0]))
            report.fail({"error": err.__class__.__name__, "message": str(err)})
            return report

    return run


def _each(items: Iterable) -> List[tuple]:
    return [(item,) for item in items]


def _run(
    check: Callable[..., Report],
    items: Sequence,
    name: str,
    threads: int = None,
    progress: bool = False,
) -> List[Report]:
    if not items:
        return []
    workers = max(1, threads or config.POLYFAN_THREADS)
    log.debug(f"{name}: {len(items)} instances on {workers} threads")
    return list(
        thread_map(_guarded(check, name), items, max_workers=workers, desc=name, disable=not progress)
    )


def _cagings(max_A: int, max_E: int = None) -> List[Caging]:
    cages = cages_up_to(max_A)
    if max_E is not None:
        cages = [c for c in cages if len(c) <= max_E]
    return [Caging.from_cage(c) for c in cages]


def _building_sets(n: int):
    yield boolean_building_set(GroundOrder.canonical(n))
    yield path_building_set(n)
    yield star_building_set(n)


def subdivision_chain_suite(max_A: int, order_policy=OrderPolicy.DEEPEST_FIRST, **kwargs) -> List[Report]:
    cagings = _cagings(max_A)
    reports = _run(check_subdivision_chain, _each(cagings), "subdivision-chain", **kwargs)
    reports += _run(check_blowup, [(pi, order_policy) for pi in cagings], "blowup", **kwargs)
    reports += _run(blowup_policy_ledger, _each(cagings), "blowup-ledger", **kwargs)
    closure = [(pi, s) for pi in _cagings(min(max_A, BRUTE_FORCE_MAX)) for s in range(len(pi.target) + 1)]
    reports += _run(check_face_closure, closure, "face-closure", **kwargs)
    return reports


def facet_star_suite(max_A: int, **kwargs) -> List[Report]:
    return _run(check_facet_star, _each(_cagings(max_A)), "facet-star", **kwargs)


def splitting_suite(max_A: int, **kwargs) -> List[Report]:
    pairs = []
    for pi in _cagings(max_A, BUILDING_SET_MAX):
        pairs.extend((pi, b) for b in set(_building_sets(len(pi.target))))
    reports = _run(check_splitting, pairs, "splitting", **kwargs)

    nested = []
    for n in range(1, min(max_A, BRUTE_FORCE_MAX) + 1):
        nested.extend(connected_building_sets(n))
    for pi in _cagings(max_A, BUILDING_SET_MAX):
        for b in connected_building_sets(len(pi.target)):
            nested.append(pullback_building_set(b, pi))
    for pi in _cagings(max_A):
        nested.append(pullback_building_set(boolean_building_set(pi.target), pi))
    reports += _run(check_nested_construction, _each(set(nested)), "nested-construction", **kwargs)
    return reports


def _normal_fan_instance(pi: Caging, base: bool) -> Report:
    f = expansion(perm_rank(len(pi.target)), pi)
    if base:
        report = check_inner_normal_fan(polypermutohedral_fan(pi), base_polytope(f))
    else:
        report = check_inner_normal_fan(polystellahedral_fan(pi), independence_polytope(f))
    report["instance"] = f"cage {pi.uname} {'base' if base else 'independence'}"
    return report


def _polymatroid_instance(seed: int) -> Report:
    n = seed % BRUTE_FORCE_MAX + 1
    return check_polymatroid(random_rank(n, seed), f"random n={n} seed={seed:03d}")


def _expansion_instance(pi: Caging) -> Report:
    return check_polymatroid(expansion(perm_rank(len(pi.target)), pi), f"expansion cage {pi.uname}")


def _expansion_lattice_instance(pi: Caging) -> Report:
    return expansion_lattice_check(perm_rank(len(pi.target)), pi)


def normal_fan_suite(max_A: int, **kwargs) -> List[Report]:
    small = _cagings(min(max_A, BRUTE_FORCE_MAX))
    items = [(pi, True) for pi in _cagings(max_A)] + [(pi, False) for pi in small]
    reports = _run(_normal_fan_instance, items, "inner-normal-fan", **kwargs)
    reports += _run(_expansion_instance, _each(small), "polymatroid", **kwargs)
    reports += _run(_polymatroid_instance, _each(range(RANDOM_RANKS)), "polymatroid", **kwargs)
    reports += _run(_expansion_lattice_instance, _each(small), "expansion-lattice", **kwargs)
    sizes = range(1, min(max_A, BRUTE_FORCE_MAX) + 1)
    reports += _run(stellahedron_truncation_check, _each(sizes), "stellahedron-truncation", **kwargs)
    return reports


def tlm_suite(max_A: int, **kwargs) -> List[Report]:
    cages = [c + (1,) for c in cages_up_to(max_A)]
    return _run(check_tlm_blowup, _each(cages), "tlm", **kwargs)


def refinement_suite(max_A: int, **kwargs) -> List[Report]:
    pairs = []
    for size in range(1, max_A + 1):
        pairs.extend(refinement_pairs(size))
    reports = _run(check_refinement_chain, pairs, "refinement", **kwargs)
    cages = [c + (1,) for c in cages_up_to(max_A)]
    reports += _run(identity_over_coarse_chain, _each(cages), "identity-over-coarse", **kwargs)
    return reports


SUITES = {
    Suite.SUBDIVISION_CHAIN: subdivision_chain_suite,
    Suite.FACET_STAR: facet_star_suite,
    Suite.SPLITTING: splitting_suite,
    Suite.NORMAL_FAN: normal_fan_suite,
    Suite.TLM: tlm_suite,
    Suite.REFINEMENT: refinement_suite,
}


def fan_file_reports(paths: Iterable[str]) -> List[Report]:
    """Validates fan files; unreadable files give failed reports."""
    reports = []
    for path in paths:
        try:
            report = fan_validate(Fan.read(path))
        except (OSError, PolyfanError) as err:
            report = Report("fan-validate")
            report.fail({"error": err.__class__.__name__, "message": str(err)})
        report["instance"] = path
        reports.append(report)
    return reports


def run_suite(
    suite: Suite,
    max_A: int,
    order_policy: OrderPolicy = OrderPolicy.DEEPEST_FIRST,
    fans: Iterable[str] = (),
    threads: int = None,
    progress: bool = False,
) -> List[Report]:
    """
    Runs one suite, or every suite for Suite.ALL, over all instances with
    |A| <= max_A, plus validation of the given fan files.
    """
    suite = Suite(suite)
    options = {"threads": threads, "progress": progress}
    selected = list(SUITES) if suite == Suite.ALL else [suite]
    reports = []
    for name in selected:
        runner = SUITES[name]
        if name == Suite.SUBDIVISION_CHAIN:
            reports += runner(max_A, order_policy=OrderPolicy(order_policy), **options)
        else:
            reports += runner(max_A, **options)
    reports += fan_file_reports(fans)
    return sort_reports(reports)
