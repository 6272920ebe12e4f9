"""Validate golden files against the JSON schemas in docs/schemas."""

import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource

SCHEMAS = {
    "xtilt-object": "object.schema.json",
    "xtilt-form": "form.schema.json",
    "xtilt-report": "report.schema.json",
    "xtilt-character": "character.schema.json",
    "xtilt-hom": "hom.schema.json",
}


def main(schema_dir, golden_dir):
    schema_dir, golden_dir = pathlib.Path(schema_dir), pathlib.Path(golden_dir)
    registry = Registry()
    loaded = {}
    for path in schema_dir.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        registry = registry.with_resource(schema["$id"], Resource.from_contents(schema))
        loaded[path.name] = schema

    def validator(name):
        return jsonschema.Draft202012Validator(loaded[name], registry=registry)

    failures = 0
    count = 0
    for path in sorted(golden_dir.glob("*.json")):
        doc = json.loads(path.read_text())
        name = "job.schema.json" if path.name.startswith("job_") else SCHEMAS.get(doc.get("format"))
        if name is None:
            print(f"{path.name}: no schema for this file")
            failures += 1
            continue
        errors = list(validator(name).iter_errors(doc))
        for e in errors:
            print(f"{path.name}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
        failures += bool(errors)
        count += 1
    for path in sorted(golden_dir.glob("*.csv")):
        lines = path.read_text().splitlines()
        header = lines[0].split(",")
        if header[-1] != "multiplicity" or any(len(l.split(",")) != len(header) for l in lines[1:]):
            print(f"{path.name}: malformed character csv")
            failures += 1
        count += 1

    # negative controls: strictness must be visible in the schemas too
    bad = json.loads((golden_dir / "smax_A1_cyc_3_3.json").read_text())
    bad["colour"] = "red"
    if validator("object.schema.json").is_valid(bad):
        print("object schema accepts unknown keys")
        failures += 1
    bad_job = {"command": "build", "weight": "1,1"}
    if validator("job.schema.json").is_valid(bad_job):
        print("job schema accepts a string weight")
        failures += 1

    print(f"{count} golden files checked, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
