"""End-to-end checks of the kanlim command-line tool.

Usage: test_cli.py <kanlim binary> <data dir>
"""
import json
import os
import subprocess
import sys
import tempfile

BIN, DATA = sys.argv[1], sys.argv[2]
failures = []


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("KANLIM_SEED", None)
    e.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=e)


def check(name, cond, info=""):
    print(("ok   " if cond else "FAIL ") + name)
    if not cond:
        failures.append(name)
        if info:
            print("     " + info.strip().replace("\n", "\n     "))


def data(name):
    return os.path.join(DATA, name)


def table(report):
    return [(m["rank"], m["torsion"]) for m in report["cohomology"]]


with tempfile.TemporaryDirectory() as tmp:
    r = run("reconstruct", data("moore.json"))
    check("reconstruct Moore is exact", r.returncode == 0 and r.stdout.strip() == "roundtrip: exact", r.stdout + r.stderr)

    out = os.path.join(tmp, "rt.json")
    r = run("reconstruct", data("moore.json"), "--out", out)
    rt = json.load(open(out))
    check("reconstruct report carries Q and crown", rt["roundtrip"] == "exact" and len(rt["crown"]) == 8
          and rt["q"] == rt["input"])

    r = run("poset", "D_4", "--dot")
    nodes = [l for l in r.stdout.splitlines() if l.strip().endswith('";') and "->" not in l]
    check("D_4 DOT has 12 nodes", r.returncode == 0 and len(nodes) == 12 and r.stdout.startswith("digraph"), r.stdout)

    r = run("poset", "C_4xC_4")
    p = json.loads(r.stdout)
    check("C_4 x C_4 has 64 elements and 128 covers", len(p["elements"]) == 64 and len(p["hasse"]) == 128)
    check("unknown poset name is invalid input", run("poset", "Q_7").returncode == 2)

    # smash: golden Moore case, unit law, zero
    a = os.path.join(tmp, "a.json")
    r = run("smash", data("moore.json"), data("moore.json"), "--out", a)
    mm = json.load(open(a))
    check("Moore (x) Moore cohomology is (0, Z/3, Z/3, 0)",
          table(mm) == [(0, []), (0, [1]), (0, [1]), (0, [])] and mm["oracle"] == mm["cohomology"], r.stdout)
    l_check = [c for c in mm["checks"] if c["anchor"] == "L-membership of i*E"]
    others = [c for c in mm["checks"] if c["anchor"] != "L-membership of i*E"]
    check("Moore (x) Moore: only L-membership fails (Tor defect)",
          r.returncode == 1 and l_check[0]["status"] == "fail" and all(c["status"] == "pass" for c in others))
    check("every check carries an anchor", all(c["anchor"] for c in mm["checks"]))

    r = run("smash", data("unit.json"), data("moore.json"))
    um = json.loads(r.stdout)
    check("unit (x) Moore has the cohomology of Moore", r.returncode == 0 and table(um) == [(0, []), (0, [1]), (0, []), (0, [])])
    r = run("smash", data("zero.json"), data("moore.json"))
    zm = json.loads(r.stdout)
    check("zero (x) Moore is zero", r.returncode == 0 and all(m == {"rank": 0, "torsion": []} for m in zm["objects"]))

    b = os.path.join(tmp, "b.json")
    run("smash", data("moore.json"), data("moore.json"), "--out", b)
    check("smash report is byte-identical across runs", open(a).read() == open(b).read())

    # invalid input and usage
    r = run("reconstruct", data("bad_d2.json"))
    check("d^2 != 0 exits 2 with InvalidComplex", r.returncode == 2 and "InvalidComplex" in r.stderr, r.stderr)
    check("missing file exits 2", run("reconstruct", os.path.join(tmp, "none.json")).returncode == 2)
    bad = os.path.join(tmp, "bad.json")
    open(bad, "w").write("{not json")
    check("malformed JSON exits 2", run("reconstruct", bad).returncode == 2)
    r = run("frobnicate")
    check("unknown command exits 64 with usage", r.returncode == 64 and "Usage" in r.stderr + r.stdout)
    check("no command exits 64", run().returncode == 64)
    check("smash with one file exits 64", run("smash", data("moore.json")).returncode == 64)
    check("help exits 0", run("--help").returncode == 0)

    # sseq: single vertex, E_2 is H in column 0
    r = run("sseq", data("single_vertex.json"))
    ss = json.loads(r.stdout)["vertices"][0]
    e2 = {(c["s"], c["t"]): c["module"] for c in ss["pages"][1]["cells"]}
    check("sseq on a single vertex: E_2 = H in column 0",
          r.returncode == 0 and ss["pages"][1]["r"] == 2 and all(s == 0 for s, _ in e2)
          and e2[(0, 1)] == {"rank": 0, "torsion": [1]} and e2[(0, 0)]["rank"] == 0)

    # randomgen: reproducible, bounded, flat on request, env override
    d1, d2, d3 = (os.path.join(tmp, x) for x in ("g1", "g2", "g3"))
    run("randomgen", "--seed", "1", "--cases", "20", "--max-rank", "3", "--max-exp", "2", "--out", d1)
    run("randomgen", "--seed", "1", "--cases", "20", "--max-rank", "3", "--max-exp", "2", "--out", d2)
    files = sorted(os.listdir(d1))
    check("randomgen writes one file per case", len(files) == 20)
    check("randomgen with seed 1 twice gives identical files",
          files == sorted(os.listdir(d2)) and all(open(os.path.join(d1, f)).read() == open(os.path.join(d2, f)).read() for f in files))
    cs = [json.load(open(os.path.join(d1, f))) for f in files]
    check("randomgen respects rank <= 3 and exponent <= 2",
          all(m["rank"] + len(m["torsion"]) <= 3 and all(e <= 2 for e in m["torsion"]) for c in cs for m in c["modules"]))
    check("random complexes reconstruct exactly",
          all(run("reconstruct", os.path.join(d1, f)).returncode == 0 for f in files[:5]))
    r = run("randomgen", "--seed", "5", "--cases", "20", "--flat")
    check("flat flag gives torsion-free modules", all(not m["torsion"] for c in json.loads(r.stdout) for m in c["modules"]))
    env1 = run("randomgen", "--seed", "9", "--cases", "3", env={"KANLIM_SEED": "1"}).stdout
    seed1 = run("randomgen", "--seed", "1", "--cases", "3").stdout
    check("KANLIM_SEED overrides --seed", env1 == seed1 and env1 != run("randomgen", "--seed", "9", "--cases", "3").stdout)
    check("even p is invalid input", run("randomgen", "--p", "4").returncode == 2)
    r = run("randomgen", "--p", "5", "--cases", "2")
    check("p = 5 gives period 8", r.returncode == 0 and all(c["N"] == 8 for c in json.loads(r.stdout)))

if failures:
    print(f"{len(failures)} failing")
    sys.exit(1)
print("all passed")
