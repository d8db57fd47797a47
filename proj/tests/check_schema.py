# Copyright 2026 The eecrel Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Validates scenario documents against the JSON schema.

usage: check_schema.py <schema.json> <scenarios dir>
"""

import copy
import json
import pathlib
import sys

import jsonschema


def rejected(validator, doc):
    return not validator.is_valid(doc)


def main(argv):
    schema = json.loads(pathlib.Path(argv[1]).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    docs = sorted(pathlib.Path(argv[2]).glob("*.json"))
    for path in docs:
        errors = list(validator.iter_errors(json.loads(path.read_text())))
        status = "ok  " if not errors else "FAIL"
        print(f"{status} {path.name}")
        for e in errors:
            print(f"  {list(e.path)}: {e.message}")
        failures += bool(errors)

    base = json.loads(docs[0].read_text())
    mutations = {
        "unknown top-level key": lambda d: d.update(extra=1),
        "schema version 2": lambda d: d.update(schema_version=2),
        "no devices": lambda d: d.update(devices=[]),
        "unknown tail kind": lambda d: d["devices"][0]["tail"].update(kind="weibull"),
        "unknown sweep variable": lambda d: d.update(sweep={"variable": "speed", "grid": [1]}),
        "string capacity": lambda d: d["devices"][0].update(capacity_c="fast"),
    }
    for name, mutate in mutations.items():
        doc = copy.deepcopy(base)
        mutate(doc)
        ok = rejected(validator, doc)
        print(f"{'ok  ' if ok else 'FAIL'} rejects {name}")
        failures += not ok

    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
