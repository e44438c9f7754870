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
Contains the string enums used for modes, policies and CLI choices.
"""

from enum import Enum
from typing import List


class BaseEnum(str, Enum):
    """
    Base class for polyfan string enums. Member values are the spellings used
    on the command line and in JSON.
    """

    def __str__(self):
        return self.value

    @classmethod
    def choices(cls) -> List[str]:
        return [member.value for member in cls]


class Mode(BaseEnum):
    """Ambient space modes."""

    FULL = "full"
    QUOTIENT = "quotient"


class OrderPolicy(BaseEnum):
    """Schedules for the product blow-up."""

    DEEPEST_FIRST = "deepest_first"  # |J| nonincreasing
    SMALLEST_FIRST = "smallest_first"  # |J| nondecreasing


class FanKind(BaseEnum):
    PRODUCT = "product"
    DELTA = "delta"
    POLYSTELLAHEDRAL = "polystellahedral"
    POLYPERMUTOHEDRAL = "polypermutohedral"
    NESTED = "nested"
    TLM_BLOWUP = "tlm-blowup"


class Suite(BaseEnum):
    SUBDIVISION_CHAIN = "subdivision-chain"
    FACET_STAR = "facet-star"
    SPLITTING = "splitting"
    NORMAL_FAN = "normal-fan"
    TLM = "tlm"
    REFINEMENT = "refinement"
    ALL = "all"


class CompareMode(BaseEnum):
    EQUAL = "equal"
    REFINES = "refines"
