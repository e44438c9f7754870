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
Contains the polyfan command line interface.

Exit codes: 0 pass, 1 check failed or predicate false, 2 usage, parse or
ambient mismatch, 3 internal invariant violation.
"""

import argparse
import os
import sys
from typing import List, Optional

from polyfan import config
from polyfan.base import read_entity
from polyfan.buildingset import (
    BuildingSet,
    boolean_building_set,
    nested_fan,
    path_building_set,
    pullback_building_set,
    star_building_set,
)
from polyfan.caging import Caging
from polyfan.enums import CompareMode, FanKind, OrderPolicy, Suite
from polyfan.errors import AmbientMismatch, InvariantViolation, ParseError, PolyfanError
from polyfan.fan import Fan, fan_equal, fan_refines, fan_validate
from polyfan.flags import (
    delta_fan,
    polypermutohedral_fan,
    polystellahedral_fan,
    product_fan,
    tlm_blowup_fan,
)
from polyfan.helpers import canonical_json
from polyfan.lattice import GroundOrder
from polyfan.logger import log, setup_stream_handler
from polyfan.report import summarize
from polyfan.suites import run_suite

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3

BUILDING_SETS = {
    "boolean": lambda n: boolean_building_set(GroundOrder.canonical(n)),
    "path": path_building_set,
    "star": star_building_set,
}


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="polyfan", description="Exact toric fans of cagings and polymatroids.")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help=f"worker threads for verify (default: POLYFAN_THREADS={config.POLYFAN_THREADS})",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build", help="build a fan from a cage spec")
    build.add_argument("--kind", required=True, choices=FanKind.choices())
    build.add_argument("--cage", required=True, help='cage spec such as "2,1"')
    build.add_argument("--s", type=int, default=None, help="interpolation index, required for --kind delta")
    build.add_argument(
        "--building-set",
        default="boolean",
        help="boolean, path, star or a building set JSON file (--kind nested)",
    )
    build.add_argument("--out", default=None, help="fan file to write (default: stdout)")
    build.add_argument("--json", action="store_true", help="print counts as JSON")

    verify = subparsers.add_parser("verify", help="run verification suites")
    verify.add_argument("--suite", default=Suite.ALL.value, choices=Suite.choices())
    verify.add_argument("--max-A", dest="max_A", type=int, default=4, help="largest |A| to sweep")
    verify.add_argument("--order-policy", default=OrderPolicy.DEEPEST_FIRST.value, choices=OrderPolicy.choices())
    verify.add_argument("--fan", action="append", default=[], help="fan file to validate, repeatable")
    verify.add_argument("--out", default=None, help="report file to write")
    verify.add_argument("--json", action="store_true", help="print the report as JSON")

    compare = subparsers.add_parser("compare", help="compare two fan files")
    compare.add_argument("first")
    compare.add_argument("second")
    compare.add_argument("--mode", default=CompareMode.EQUAL.value, choices=CompareMode.choices())

    convert = subparsers.add_parser("convert", help="re-serialize an entity file canonically")
    convert.add_argument("input")
    convert.add_argument("output", nargs="?", default=None)
    convert.add_argument("--summary", action="store_true", help="print a summary instead")

    return parser.parse_args(argv)


def _building_set(spec: str, n: int) -> BuildingSet:
    if spec in BUILDING_SETS:
        return BUILDING_SETS[spec](n)
    if os.path.exists(spec):
        return BuildingSet.read(spec)
    raise ParseError(f"unknown building set {spec!r}")


def build_fan(kind: FanKind, cage: str, s: int = None, building_set: str = "boolean") -> Fan:
    """Returns the fan of the given kind for a cage spec."""
    kind = FanKind(kind)
    pi = Caging.from_spec(cage)
    if kind == FanKind.DELTA:
        if s is None:
            raise ParseError("--s is required for --kind delta")
        return delta_fan(pi, s)
    if s is not None:
        raise ParseError("--s is only valid for --kind delta")
    if kind == FanKind.PRODUCT:
        return product_fan(pi)
    if kind == FanKind.POLYSTELLAHEDRAL:
        return polystellahedral_fan(pi)
    if kind == FanKind.POLYPERMUTOHEDRAL:
        return polypermutohedral_fan(pi)
    if kind == FanKind.NESTED:
        b = _building_set(building_set, len(pi.target))
        return nested_fan(pullback_building_set(b, pi))
    return tlm_blowup_fan(pi.cage)


def cmd_build(args: argparse.Namespace) -> int:
    fan = build_fan(args.kind, args.cage, args.s, args.building_set)
    report = fan_validate(fan)
    if not report.passed:
        raise InvariantViolation(f"built fan {fan.uname} is not a complete smooth fan: {report.witnesses}")
    counts = {"rays": len(fan.rays), "maximal_cones": len(fan.maximal_cones)}
    if args.out:
        fan.write(args.out)
        counts["out"] = args.out
        if args.json:
            sys.stdout.write(canonical_json(counts))
        else:
            print(f"rays={counts['rays']} maximal_cones={counts['maximal_cones']}")
    else:
        log.info(f"rays={counts['rays']} maximal_cones={counts['maximal_cones']}")
        sys.stdout.write(fan.dumps())
    return EXIT_PASS


def cmd_verify(args: argparse.Namespace) -> int:
    reports = run_suite(
        args.suite,
        args.max_A,
        order_policy=args.order_policy,
        fans=args.fan,
        threads=args.threads,
        progress=args.verbose,
    )
    summary = summarize(f"verify {args.suite}", reports)
    if args.out:
        with open(args.out, "w") as f:
            f.write(summary.dumps())
    if args.json:
        sys.stdout.write(summary.dumps())
    else:
        failed = [r for r in reports if not r.passed]
        for r in failed:
            print(f"FAIL {r.check}: {r.instance}")
        print(f"verify {args.suite}: {len(reports)} instances, {len(failed)} failed")
    return EXIT_PASS if summary.passed else EXIT_FAIL


def cmd_compare(args: argparse.Namespace) -> int:
    first = Fan.read(args.first)
    second = Fan.read(args.second)
    if CompareMode(args.mode) == CompareMode.EQUAL:
        result = fan_equal(first, second)
    else:
        result = fan_refines(first, second)
    print("true" if result else "false")
    return EXIT_PASS if result else EXIT_FAIL


def cmd_convert(args: argparse.Namespace) -> int:
    entity = read_entity(args.input)
    if args.summary:
        summary = {"type": entity.type(), "name": entity.uname}
        if isinstance(entity, Fan):
            summary.update(rays=len(entity.rays), maximal_cones=len(entity.maximal_cones), dim=entity.dim)
        sys.stdout.write(canonical_json(summary))
    elif args.output:
        entity.write(args.output)
    else:
        sys.stdout.write(entity.dumps())
    return EXIT_PASS


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "compare": cmd_compare,
    "convert": cmd_convert,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    setup_stream_handler("DEBUG" if args.verbose else config.LOG_LEVEL)
    try:
        return COMMANDS[args.command](args)
    except AmbientMismatch as err:
        log.error(str(err))
        return EXIT_USAGE
    except InvariantViolation as err:
        log.error(f"invariant violation: {err}")
        return EXIT_INVARIANT
    except (PolyfanError, OSError) as err:
        log.error(str(err))
        return EXIT_USAGE
    except Exception as err:
        log.exception(f"unexpected error: {err}")
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
