"""Validate JSON documents against a schema: check_schema.py SCHEMA DOC..."""
import json
import sys

import jsonschema


def main(argv):
    schema = json.load(open(argv[1]))
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failed = 0
    for path in argv[2:]:
        errors = list(validator.iter_errors(json.load(open(path))))
        for err in errors:
            print(f"{path}: {err.json_path}: {err.message}")
        failed += bool(errors)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
