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
Contains the entity base class for objects that serialize to JSON.
"""

import json
from typing import Dict, Type

from polyfan import helpers
from polyfan.errors import ParseError
from polyfan.logger import log


class Entity(object):
    """Entity base class."""

    # must be set on the subclass
    entity_type = None

    # top-level JSON keys, override on subclasses
    fields = []

    # default file extension for write()
    extension = ".json"

    def __repr__(self):
        return '<{0} "{1}">'.format(self.__class__.__name__, self.uname)

    @property
    def uname(self) -> str:
        """Returns a short human readable name."""
        return self.type()

    def type(self) -> str:
        """Returns the entity type name."""
        return self.entity_type or self.__class__.__name__

    def to_data(self) -> dict:
        raise NotImplementedError

    @classmethod
    def from_data(cls, data: dict):
        raise NotImplementedError

    def dumps(self) -> str:
        """Returns canonical JSON text."""
        return helpers.canonical_json(self.to_data())

    @classmethod
    def loads(cls, text: str):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise ParseError(f"invalid JSON: {err}")
        return cls.from_data(data)

    def write(self, path: str) -> str:
        """Writes canonical JSON to path and returns the path."""
        with open(path, "w") as f:
            f.write(self.dumps())
        log.debug(f"wrote {self} to {path}")
        return path

    @classmethod
    def read(cls, path: str):
        with open(path) as f:
            return cls.loads(f.read())


def entity_type_class_map() -> Dict[str, Type[Entity]]:
    """Returns a map of entity type name to class for every entity type."""
    # subclasses register on import
    from polyfan import buildingset, caging, fan, polymatroid  # noqa: F401

    result = {}
    pending = list(Entity.__subclasses__())
    while pending:
        cls = pending.pop()
        pending.extend(cls.__subclasses__())
        if cls.entity_type:
            result[cls.entity_type] = cls
    return result


def load_entity(data: dict) -> Entity:
    """
    Returns the entity held by a JSON document, sniffing its type from the
    set of top-level keys.

    :param data: parsed JSON document
    :raise: ParseError if no entity type matches
    """
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object")
    keys = set(data)
    for entity_type, cls in sorted(entity_type_class_map().items()):
        if keys == set(cls.fields):
            return cls.from_data(data)
    raise ParseError(f"unrecognized document with keys {sorted(keys)}")


def read_entity(path: str) -> Entity:
    with open(path) as f:
        text = f.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"{path}: invalid JSON: {err}")
    return load_entity(data)
