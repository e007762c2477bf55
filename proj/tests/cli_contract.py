#!/usr/bin/env python3
"""CLI contract: exit codes, schema-valid manifests, reproducible attack payloads."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

RMC, SCHEMA_DIR, WORK = sys.argv[1], pathlib.Path(sys.argv[2]) / "v1", pathlib.Path(sys.argv[3])
WORK.mkdir(parents=True, exist_ok=True)

schemas = {}
for path in sorted(SCHEMA_DIR.glob("*.schema.json")):
    doc = json.loads(path.read_text())
    schemas[doc["$id"].rsplit(":", 1)[1]] = doc
registry = Registry().with_resources((s["$id"], Resource.from_contents(s)) for s in schemas.values())

failures = []


def check(cond, what):
    print(("ok    " if cond else "FAIL  ") + what)
    if not cond:
        failures.append(what)


def run(*args, expect):
    proc = subprocess.run([RMC, *map(str, args)], capture_output=True, text=True, timeout=300)
    check(proc.returncode == expect, f"{' '.join(map(str, args[:3]))} ... exits {expect} (got {proc.returncode})")
    return proc


def validate(doc, name, what):
    validator = jsonschema.Draft202012Validator(schemas[name], registry=registry)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    check(not errors, f"{what} matches {name} schema" + (f": {errors[0].message}" if errors else ""))


def manifest(path, what):
    doc = json.loads(path.read_text())
    validate(doc, "manifest", what)
    return doc


key = WORK / "toy.json"
pub = WORK / "toy.pub.json"
run("keygen", "--q", 2, "--m", 20, "--k", 15, "--d", 3, "--seed", 0, "--out", key, "--json-out", WORK / "keygen.json",
    expect=0)
manifest(WORK / "keygen.json", "keygen manifest")
validate(json.loads(key.read_text()), "key", "secret key file")
validate(json.loads(pub.read_text()), "public_key", "public key file")

payloads = []
for i, threads in enumerate([1, 1, 4]):
    out = WORK / f"attack{i}.json"
    proc = run("attack", "--pub", pub, "--mode", "fold-project", "--seed", 0, "--threads", threads, "--json-out", out,
               expect=0)
    check("verified" in proc.stdout, f"attack run {i} prints the verification line")
    doc = manifest(out, f"attack manifest {i}")
    check("timings" not in doc["payload"], f"attack payload {i} carries no timings")
    payloads.append(json.dumps(doc["payload"], sort_keys=True))
check(payloads[0] == payloads[1], "repeated attack payloads are byte-identical")
check(payloads[0] == payloads[2], "attack payload does not depend on the thread count")

run("attack", "--pub", pub, "--mode", "fold", "--seed", 0, "--json-out", WORK / "fold.json", expect=0)
fold_trials = sum(x["trials"] for x in json.loads((WORK / "fold.json").read_text())["payload"]["searches"])
fp_trials = sum(x["trials"] for x in json.loads(payloads[0])["searches"])
check(fold_trials > fp_trials, f"fold-only needs more trials than fold-project ({fold_trials} vs {fp_trials})")

weak = WORK / "weak.json"
run("keygen", "--q", 2, "--m", 20, "--k", 15, "--d", 3, "--seed", 10, "--out", weak, expect=0)
run("attack", "--pub", WORK / "weak.pub.json", "--mode", "fold", "--seed", 10, "--max-trials", 5, "--json-out",
    WORK / "notfound.json", expect=3)
doc = manifest(WORK / "notfound.json", "not-found attack manifest")
check(doc["payload"]["status"] == "not_found", "exhausted search reports not_found")

big = WORK / "big.json"
run("keygen", "--q", 2, "--m", 41, "--k", 37, "--d", 4, "--seed", 1, "--out", big, expect=0)
proc = run("attack", "--pub", WORK / "big.pub.json", "--mode", "fold-project", "--seed", 1, "--json-out",
           WORK / "refused.json", expect=4)
check("estimated work 2^" in proc.stdout, "refusal prints the work estimate")
doc = manifest(WORK / "refused.json", "refused attack manifest")
check(doc["payload"]["status"] == "refused", "refused attack reports refused")

proc = run("estimate", "--params", "paper", "--json-out", WORK / "estimate.json", expect=0)
doc = manifest(WORK / "estimate.json", "estimate manifest")
check(len(doc["payload"]["cases"]) == 3, "paper estimate lists three cases")
run("estimate", "--params", "m=20,n=30,K=420,w=3,a=2,q=2,variant=hinted", expect=0)

proc = run("factor", "--k", 34, "--q", 16, "--json-out", WORK / "factor.json", expect=0)
check(proc.stdout.startswith("1^2 + 2^2 + "), "factor summary for X^34 - 1 over F_16")
manifest(WORK / "factor.json", "factor manifest")

run("bench-prob", "--q", 2, "--m", 6, "--r", 3, "--w", 2, "--a", 1, "--trials", 2000, "--seed", 1, "--json-out",
    WORK / "bench.json", expect=0)
manifest(WORK / "bench.json", "bench-prob manifest")

run("oracle", "--task", "subspaces", "--q", 3, "--m", 4, "--w", 2, "--json-out", WORK / "oracle_sub.json", expect=0)
manifest(WORK / "oracle_sub.json", "oracle subspaces manifest")
run("oracle", "--task", "min-weight", "--q", 2, "--m", 3, "--n", 3, "--K", 2, "--seed", 1, "--json-out",
    WORK / "oracle_mw.json", expect=0)
doc = manifest(WORK / "oracle_mw.json", "oracle min-weight manifest")
code = WORK / "code.json"
code.write_text(json.dumps(doc["payload"]["code"]))
validate(doc["payload"]["code"], "code", "exported matrix code")
run("oracle", "--task", "min-weight", "--code", code, "--json-out", WORK / "oracle_file.json", expect=0)
again = json.loads((WORK / "oracle_file.json").read_text())
check(again["payload"]["distribution"] == doc["payload"]["distribution"], "code file round-trips through the oracle")

replays = {
    "keygen": ["keygen", "--q", 3, "--m", 5, "--k", 4, "--d", 2, "--seed", 7, "--out", WORK / "replay_key.json"],
    "bench-prob": ["bench-prob", "--q", 3, "--m", 4, "--r", 2, "--w", 2, "--a", 1, "--trials", 500, "--seed", 7],
    "estimate": ["estimate", "--params", "paper"],
    "factor": ["factor", "--k", 21, "--q", 4],
    "oracle": ["oracle", "--task", "min-weight", "--q", 3, "--m", 3, "--n", 3, "--K", 2, "--seed", 7],
}
for name, args in replays.items():
    seen = []
    for i in range(2):
        out = WORK / f"replay_{name}_{i}.json"
        run(*args, "--json-out", out, expect=0)
        seen.append(json.dumps(manifest(out, f"{name} replay {i}")["payload"], sort_keys=True))
    check(seen[0] == seen[1], f"{name} payload replays byte-identically")

run("keygen", "--q", 6, "--m", 4, "--k", 3, "--d", 2, "--out", WORK / "bad.json", expect=2)
run("keygen", "--q", 2, "--m", 4, "--k", 3, "--d", 5, "--out", WORK / "bad.json", expect=2)
run("estimate", "--params", "m=oops", expect=2)
run("attack", "--pub", WORK / "missing.pub.json", expect=2)
run("attack", "--pub", key, "--mode", "sideways", expect=2)
run("attack", "--pub", pub, "--divisor", "1,0,1,1", expect=2)
run("attack", "--pub", pub, "--divisor", "1,0,0,0,0,1", "--seed", 0, expect=0)
run("factor", "--k", 34, "--q", 16, "--no-such-flag", expect=2)
run("--help", expect=0)

print(f"{len(failures)} contract checks failed")
sys.exit(1 if failures else 0)
