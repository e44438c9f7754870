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
Contains the dotdict and Report classes returned by every check.
"""

from typing import Any, Iterable, List

from polyfan import helpers


class dotdict(dict):
    """
    Dictionary with dotted attribute access. Nested dicts are wrapped on
    assignment; missing keys read as an empty dotdict without modifying
    the parent, so lookups can be chained:

        >>> d = dotdict({"counts": {"rays": 5}})
        >>> d.counts.rays
        5
        >>> d.counts.cones
        {}
    """

    def __init__(self, value: dict = None):
        dict.__init__(self)
        if value is None:
            pass
        elif isinstance(value, dict):
            for key in value:
                self.__setitem__(key, value[key])
        else:
            raise TypeError("expected dict")

    def __setitem__(self, key, value):
        if isinstance(value, dict) and not isinstance(value, dotdict):
            value = dotdict(value)
        dict.__setitem__(self, key, value)

    def __getitem__(self, key):
        found = self.get(key)
        if found is None:
            return dotdict()
        return found

    __setattr__ = __setitem__
    __getattr__ = __getitem__


class Report(dotdict):
    """
    Result of one check on one instance, serialized as
    {check, instance, pass, witnesses} plus any extra keys:

        >>> report = Report("facet-star", "cage 1,1")
        >>> report.fail({"cone": [0, 1]})
        >>> report.passed
        False
    """

    def __init__(self, check: str = None, instance: str = None, value: dict = None):
        dotdict.__init__(self, value)
        if check is not None:
            self["check"] = check
        if instance is not None:
            self["instance"] = instance
        self.setdefault("pass", True)
        self.setdefault("witnesses", [])

    @property
    def passed(self) -> bool:
        return bool(self.get("pass"))

    def fail(self, witness: Any = None):
        """Marks the report failed, recording witness if given."""
        dict.__setitem__(self, "pass", False)
        if witness is not None:
            self.get("witnesses").append(witness)

    def require(self, condition: bool, witness: Any) -> bool:
        """Fails the report with witness unless condition holds."""
        if not condition:
            self.fail(witness)
        return bool(condition)

    def merge(self, other: "Report", prefix: str = None) -> "Report":
        """
        Folds another report into this one: pass becomes the conjunction and
        the other report's witnesses are appended, tagged with its check name.
        """
        tag = prefix or other.get("check")
        for witness in other.get("witnesses", []):
            self.get("witnesses").append({"check": tag, "witness": witness})
        if not other.passed:
            dict.__setitem__(self, "pass", False)
        return self

    def to_data(self) -> dict:
        return _plain(self)

    def dumps(self) -> str:
        return helpers.canonical_json(self.to_data())


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted((_plain(v) for v in value), key=repr)
    if isinstance(value, bool) or isinstance(value, int) or value is None:
        return value
    if isinstance(value, (str, float)):
        return value
    return str(value)


def sort_reports(reports: Iterable[Report]) -> List[Report]:
    """Returns reports in deterministic (check, instance) order."""
    return sorted(reports, key=lambda r: (str(r.get("check")), str(r.get("instance"))))


def summarize(check: str, reports: Iterable[Report]) -> Report:
    """Returns one report whose pass is the conjunction of reports."""
    reports = sort_reports(reports)
    summary = Report(check, f"{len(reports)} instances")
    summary["instances"] = [r.to_data() for r in reports]
    for r in reports:
        if not r.passed:
            summary.fail({"check": r.get("check"), "instance": r.get("instance")})
    return summary
