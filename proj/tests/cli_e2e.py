#!/usr/bin/env python3
"""End-to-end checks of the torquo command line: exit codes, outputs, schema."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

TORQUO = sys.argv[1]
SCHEMA_PATH = sys.argv[2]

with open(SCHEMA_PATH) as fh:
    SCHEMA = json.load(fh)

failures = []


def schema_for(kind):
    return {"$defs": SCHEMA["$defs"], "$ref": "#/$defs/" + kind}


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    p = subprocess.run([TORQUO, *args], capture_output=True, text=True, env=full_env)
    return p.returncode, p.stdout, p.stderr


def expect(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL", what)


def expect_json(args, code, kind, env=None):
    rc, out, err = run("--json", *args, env=env)
    expect(rc == code, f"{' '.join(args)}: exit {rc}, wanted {code} ({err.strip()})")
    try:
        doc = json.loads(out)
    except json.JSONDecodeError as e:
        expect(False, f"{' '.join(args)}: stdout is not JSON ({e})")
        return None
    try:
        jsonschema.validate(doc, schema_for(kind))
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as e:
        expect(False, f"{' '.join(args)}: {kind} output violates the schema: {e.message}")
    return doc


def write(path, doc):
    with open(path, "w") as fh:
        fh.write(doc if isinstance(doc, str) else json.dumps(doc))
    return path


with tempfile.TemporaryDirectory() as tmp:
    p = lambda name: os.path.join(tmp, name)

    p2 = write(p("p2.json"), {"rank": 2, "rays": [[1, 0], [0, 1], [-1, -1]],
                              "max_cones": [[0, 1], [0, 2], [1, 2]]})
    dup = write(p("dup.json"), {"rank": 2, "rays": [[1, 0], [0, 1], [-1, -1], [1, 0]],
                               "max_cones": [[0, 1], [0, 2], [1, 2]]})
    truncated = write(p("truncated.json"), '{"rank": 2, "rays": [[1,0],')

    # check
    rc, out, _ = run("check", p2)
    expect(rc == 0, f"check P2: exit {rc}")
    doc = expect_json(["check", p2], 0, "check")
    expect(doc and doc["accepted"] and doc["smooth"] and doc["projective"], "P2 report flags")

    rc, out, err = run("check", dup)
    expect(rc == 1, f"duplicate ray: exit {rc}")
    expect("duplicate ray index 3" in out + err, "duplicate ray witness missing")
    doc = expect_json(["check", dup], 1, "check")
    expect(doc and "duplicate ray index 3" in (doc.get("witness") or ""), "duplicate ray witness in JSON")

    rc, _, err = run("check", truncated)
    expect(rc == 2, f"truncated JSON: exit {rc}")
    expect("line" in err, "parse error names a line")
    expect_json(["check", truncated], 2, "error")
    expect_json(["check", p("missing.json")], 2, "error")

    # classes
    doc = expect_json(["classes", p2], 0, "classes")
    expect(doc and doc["rho"] == 1 and len(doc["mori_generators"]) == 1, "P2 classes")

    # families
    p1p1 = p("p1p1.json")
    rc, _, _ = run("gallery", "emit", "P1xP1", "-o", p1p1)
    expect(rc == 0, "gallery emit P1xP1")
    quotient = p("ruling.json")
    rc, out, _ = run("family", p1p1, "[1,1,0,0]", "--emit-quotient", quotient)
    expect(rc == 0, f"P1xP1 ruling: exit {rc}")
    expect(os.path.exists(quotient), "quotient file not written")
    if os.path.exists(quotient):
        with open(quotient) as fh:
            q = json.load(fh)
        jsonschema.validate(q, schema_for("fan"))
        expect(q["rank"] == 1 and len(q["rays"]) == 2, "P1xP1 quotient is P1")
    doc = expect_json(["family", p1p1, "[1,1,0,0]", "--trace"], 0, "family")
    expect(doc and doc["quotient"]["rho_drop"] == 1 and doc["quotient"]["fiber_dim"] == 1, "ruling quotient data")
    expect(doc and "trace" in doc, "trace requested but absent")

    rc, out, _ = run("family", p2, "[1,1,1]")
    expect(rc == 0, f"P2 line: exit {rc}")
    doc = expect_json(["family", p2, "[1,1,1]"], 0, "family")
    expect(doc and doc["quotient"]["rank"] == 0, "P2 line contracts to a point")

    z2 = p("z2.json")
    rc, _, _ = run("gallery", "emit", "Z2", "-o", z2)
    expect(rc == 0, "gallery emit Z2")
    rc, out, _ = run("family", z2, "[1,1,1,0,0,0,0,0]")
    expect(rc == 4, f"Z2 line: exit {rc}")
    expect("interior of NE(X)" in out, "interior note missing for the Z2 line")
    doc = expect_json(["family", z2, "[1,1,1,0,0,0,0,0]"], 4, "family")
    expect(doc and doc["interior"] is True and doc["condition_b"]["violation"] is not None, "Z2 report")

    f1 = p("f1.json")
    run("gallery", "emit", "F1", "-o", f1)
    rc, _, _ = run("family", f1, "[1,-1,1,0]")
    expect(rc == 3, f"F1 negative section: exit {rc}")
    expect_json(["family", f1, "[1,-1,1,0]"], 3, "family")
    expect_json(["family", p2, "[1,1]"], 2, "error")
    rc, _, _ = run("family", p2, "[1,2,3]")
    expect(rc == 2, f"non-relation: exit {rc}")

    # quotient
    out_q = p("q.json")
    doc = expect_json(["quotient", p1p1, "[1,1,0,0]", "-o", out_q], 0, "written")
    expect(os.path.exists(out_q), "quotient -o wrote nothing")

    # construct
    pn = p("pn.json")
    doc = expect_json(["construct", "pn", "2", "-o", pn], 0, "written")
    expect(doc and len(doc["fan"]["rays"]) == 3, "construct pn 2")
    prod = p("prod.json")
    doc = expect_json(["construct", "product", pn, pn, "-o", prod], 0, "written")
    expect(doc and len(doc["fan"]["rays"]) == 6, "product has 6 rays")
    blown = p("blown.json")
    doc = expect_json(["construct", "blowup", prod, "--cone", "0,3", "-o", blown], 0, "written")
    expect(doc and len(doc["fan"]["rays"]) == 7, "blowup has 7 rays")
    expect_json(["construct", "blowup", prod, "--cone", "0,1,2"], 1, "error")
    expect_json(["construct", "pn", "12"], 2, "error")
    rc, _, _ = run("construct", "pn", "5", env={"TORQUO_MAX_DIM": "4"})
    expect(rc == 2, f"TORQUO_MAX_DIM: exit {rc}")
    rc, _, _ = run("construct", "pn", "4", env={"TORQUO_MAX_DIM": "4"})
    expect(rc == 0, f"within TORQUO_MAX_DIM: exit {rc}")

    # round trip: emitted JSON re-parses and re-emits byte for byte
    again = p("again.json")
    rc, _, _ = run("construct", "product", pn, pn, "-o", again)
    with open(prod) as a, open(again) as b:
        expect(a.read() == b.read(), "product output is not deterministic")
    rc, out, _ = run("--json", "check", blown)
    expect(rc == 0 and json.loads(out)["accepted"], "blown-up fan re-validates")

    # gallery
    doc = expect_json(["gallery", "list"], 0, "gallery_list")
    names = {e["name"] for e in doc or []}
    expect({"P2", "F1", "P2xP2", "Z2"} <= names, "gallery list names")
    expect_json(["gallery", "emit", "nonexistent"], 2, "error")
    r1, r2 = p("r1.json"), p("r2.json")
    run("--seed", "7", "gallery", "emit", "random", "--steps", "3", "-o", r1)
    run("--seed", "7", "gallery", "emit", "random", "--steps", "3", "-o", r2)
    with open(r1) as a, open(r2) as b:
        expect(a.read() == b.read(), "seeded random fan is not reproducible")

if failures:
    print(f"{len(failures)} CLI checks failed")
    sys.exit(1)
print("CLI checks passed")
