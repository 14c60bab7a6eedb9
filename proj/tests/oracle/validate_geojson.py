#!/usr/bin/env python3
"""Run the CLI GeoJSON export and validate it independently.

Checks the output against a JSON schema, parses every geometry with shapely
and verifies one timestamp per point and one value, color and window flag per segment.

Usage: validate_geojson.py <cli> <file.ulg> <schema.json>
Exits 77 when jsonschema or shapely is unavailable.
"""
import json
import subprocess
import sys

try:
    import jsonschema
    from shapely.geometry import shape
except ImportError as e:
    print(f"skipping: {e}")
    sys.exit(77)


def check(cli, log, schema, args):
    out = subprocess.run([cli, "export-geojson", log, *args], check=True, capture_output=True).stdout
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    if not doc["features"]:
        raise AssertionError(f"{args}: no features")
    for feature in doc["features"]:
        geom = shape(feature["geometry"])
        if geom.geom_type != "LineString":
            raise AssertionError(f"{args}: not a LineString")
        # zero-length hold at a single position
        stationary = len({tuple(c[:2]) for c in feature["geometry"]["coordinates"]}) == 1
        if not stationary and not geom.is_valid:
            raise AssertionError(f"{args}: invalid geometry")
        props = feature["properties"]
        n = len(feature["geometry"]["coordinates"])
        if len(props["timestamps"]) != n:
            raise AssertionError(f"{args}: {len(props['timestamps'])} timestamps for {n} points")
        if props["timestamps"] != sorted(set(props["timestamps"])):
            raise AssertionError(f"{args}: timestamps not strictly increasing")
        for key in ("segment_values", "segment_colors", "segment_in_window"):
            if len(props[key]) != n - 1:
                raise AssertionError(f"{args}: {key} has {len(props[key])} entries for {n - 1} segments")
    return len(doc["features"])


def main():
    cli, log, schema_path = sys.argv[1:4]
    with open(schema_path) as f:
        schema = json.load(f)
    runs = [[], ["--attr", "battery"], ["--attr", "velocity", "--scale", "diverging"]]
    for args in runs:
        count = check(cli, log, schema, args)
        print(f"ok {args or ['(no attribute)']}: {count} features")


if __name__ == "__main__":
    main()
