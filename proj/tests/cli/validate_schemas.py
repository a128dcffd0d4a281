"""Validates the example configs and a generated report against the published schemas."""
import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(sys.argv[1])
report = pathlib.Path(sys.argv[2])

config_schema = json.loads((root / "tools/wpg/config.schema.json").read_text())
report_schema = json.loads((root / "tools/wpg/report.schema.json").read_text())
jsonschema.Draft202012Validator.check_schema(config_schema)
jsonschema.Draft202012Validator.check_schema(report_schema)

for path in sorted((root / "configs").glob("*.json")):
    jsonschema.validate(json.loads(path.read_text()), config_schema)
    print(f"{path.name}: valid config")

# Unknown keys must be rejected by the schema as they are by the parser.
try:
    jsonschema.validate({"colour": 1}, config_schema)
    sys.exit("schema accepted an unknown key")
except jsonschema.ValidationError:
    pass

reports = json.loads(report.read_text())
jsonschema.validate(reports, report_schema)
assert reports == sorted(reports, key=lambda r: r["check_id"]), "reports are not sorted by check id"
print(f"{report.name}: {len(reports)} valid reports")
