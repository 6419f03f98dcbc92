#!/usr/bin/env python3
"""End-to-end checks of the obliq CLI: fixtures, exit codes, report schema,
and byte stability."""

import json
import math
import os
import subprocess
import sys
import tempfile

OBLIQ = os.path.abspath(sys.argv[1])


def run(args, expect=0):
    res = subprocess.run([OBLIQ] + args, capture_output=True, text=True)
    if res.returncode != expect:
        raise AssertionError(
            f"{args}: expected exit {expect}, got {res.returncode}\n"
            f"stdout: {res.stdout}\nstderr: {res.stderr}"
        )
    return res


def report(args, expect=0):
    res = run(args, expect)
    return json.loads(res.stdout)


def write(path, text):
    with open(path, "w") as f:
        f.write(text)


def main():
    tmp = tempfile.mkdtemp(prefix="obliq_cli_")
    os.chdir(tmp)

    write("G2.csv", "1+0i,0+0i\n0+0i,1+0i\n")
    write("L2.csv", "1+0i\n0+0i\n")
    write("M45.csv", "1+0i\n1+0i\n")
    write("x01.csv", "0+0i\n1+0i\n")
    write("w10.csv", "1+0i\n0+0i\n")

    # incline: the 45 degree fixture.
    out = report(["incline", "--space", "G2.csv", "--l", "L2.csv", "--m", "M45.csv"])
    assert out["schema"] == "obliq/1"
    assert abs(out["outputs"]["c"] - 0.7071067812) < 1e-9
    assert out["outputs"]["q_dim"] == 0

    # incline: orthogonal fixture via MatrixMarket input.
    write(
        "G3.mtx",
        "%%MatrixMarket matrix array real general\n3 3\n"
        "1\n0\n0\n0\n1\n0\n0\n0\n1\n",
    )
    write("Lplane.csv", "1+0i,0+0i\n0+0i,1+0i\n0+0i,0+0i\n")
    write("Mplane.csv", "1+0i,0+0i\n0+0i,0+0i\n0+0i,1+0i\n")
    out = report(
        ["incline", "--space", "G3.mtx", "--l", "Lplane.csv", "--m", "Mplane.csv"]
    )
    assert abs(out["outputs"]["c"]) < 1e-12
    assert out["outputs"]["q_dim"] == 1

    # incline: containment exits 2 but still reports.
    write("Mfull.csv", "1+0i,0+0i\n0+0i,1+0i\n")
    out = report(
        ["incline", "--space", "G2.csv", "--l", "L2.csv", "--m", "Mfull.csv"],
        expect=2,
    )
    assert out["outputs"]["containment"] == "L_in_M"
    assert out["outputs"]["c"] == 1.0

    # incline: the l2 fixture theta = (2, 3).
    write(
        "G4.csv",
        "1+0i,0+0i,0+0i,0+0i\n0+0i,1+0i,0+0i,0+0i\n"
        "0+0i,0+0i,1+0i,0+0i\n0+0i,0+0i,0+0i,1+0i\n",
    )
    write("L4.csv", "1+0i,0+0i\n0+0i,0+0i\n0+0i,1+0i\n0+0i,0+0i\n")
    write("M4.csv", "1+0i,0+0i\n2+0i,0+0i\n0+0i,1+0i\n0+0i,3+0i\n")
    out = report(["incline", "--space", "G4.csv", "--l", "L4.csv", "--m", "M4.csv"])
    assert abs(out["outputs"]["c"] - 0.4472135955) < 1e-9

    # decompose: the oblique plane split with a1 = 0.
    out = report(
        [
            "decompose",
            "--space", "G2.csv", "--l", "L2.csv", "--m", "M45.csv",
            "--x", "x01.csv", "--a1", "0",
        ]
    )
    assert out["outputs"]["xl"][0].startswith("-0.9999999999")
    assert abs(out["outputs"]["A1"] - math.sqrt(2)) < 1e-9
    assert out["outputs"]["bounds"]["ok"] is True

    # decompose: x in L is returned unchanged.
    out = report(
        [
            "decompose",
            "--space", "G2.csv", "--l", "L2.csv", "--m", "M45.csv",
            "--x", "w10.csv",
        ]
    )
    assert out["outputs"]["residual"] < 1e-12

    # decompose: x outside L + M exits 3 with an error object.
    write("x3.csv", "0+0i\n0+0i\n1+0i\n")
    write("L3.csv", "1+0i\n0+0i\n0+0i\n")
    write("M3.csv", "1+0i\n1+0i\n0+0i\n")
    out = report(
        [
            "decompose",
            "--space", "G3.mtx", "--l", "L3.csv", "--m", "M3.csv",
            "--x", "x3.csv",
        ],
        expect=3,
    )
    assert out["error"]["type"] == "NotInSumSpace"

    # extend: the 45 degree fixture attains sqrt(2).
    out = report(
        ["extend", "--space", "G2.csv", "--l", "L2.csv", "--m", "M45.csv",
         "--w", "w10.csv"]
    )
    assert abs(out["outputs"]["norm_f_tilde"] - math.sqrt(2)) < 1e-9
    assert abs(out["outputs"]["norm_f_tilde"] - out["outputs"]["bound"]) < 1e-8

    # extend: weight on the intersection exits 4.
    out = report(
        ["extend", "--space", "G2.csv", "--l", "L2.csv", "--m", "L2.csv",
         "--w", "w10.csv"],
        expect=4,
    )
    assert out["error"]["type"] == "NotInFQ"

    # l2: agreement row and the degeneracy probe.
    out = report(["l2", "--pairs", "1", "--thetas", "1"])
    assert abs(out["outputs"]["c_engine"] - 1 / math.sqrt(2)) < 1e-10
    assert out["outputs"]["agreement"] <= 1e-10

    out = report(
        ["l2", "--pairs", "1", "--theta-family", "1/n", "--probe", "4",
         "--csv", "probe.csv"]
    )
    rows = out["outputs"]["probe"]["rows"]
    assert len(rows) == 4
    for row, n in zip(rows, [1, 2, 4, 8]):
        assert abs(row["bound"] - math.sqrt(1 + n * n)) < 1e-8
    with open("probe.csv") as f:
        assert f.readline().strip() == "t,c,bound,attained_norm,pair_gap"

    out = report(["l2", "--pairs", "1", "--thetas", "0"], expect=1)
    assert out["error"]["type"] == "BadTheta"

    # l2: JSON config file and fixture export round through incline.
    write("l2cfg.json", '{"n_pairs": 2, "thetas": [2.0, 3.0]}')
    out = report(["l2", "--config", "l2cfg.json", "--export", "fix"])
    assert abs(out["outputs"]["c_engine"] - 0.4472135955) < 1e-9
    assert out["inputs"]["config"]
    out = report(
        ["incline", "--space", "fix.G.mtx", "--l", "fix.L.mtx",
         "--m", "fix.M.mtx"]
    )
    assert abs(out["outputs"]["c"] - 0.4472135955) < 1e-9

    # cavity: documented N=1 dimensions, monotone c, invalid config.
    out = report(["cavity", "--dim", "2", "--modes", "1", "--samples", "20"])
    assert out["outputs"]["ambient_dim"] == 6
    assert out["outputs"]["dim_l"] == 2
    assert out["outputs"]["dim_m"] == 1

    prev_c = -1.0
    for n in range(1, 5):
        out = report(
            ["cavity", "--dim", "2", "--modes", str(n), "--samples", "10"]
        )
        assert out["outputs"]["q_dim"] == 0
        assert out["outputs"]["c"] < 0.999
        assert out["outputs"]["c"] >= prev_c - 1e-12
        prev_c = out["outputs"]["c"]

    out = report(["cavity", "--dim", "2", "--modes", "0"], expect=1)
    assert out["error"]["type"] == "ConfigTooLarge"

    # cavity: JSON config file mirrors the flag form.
    write("cavcfg.json", '{"d": 3, "n_modes": 1, "korn_samples": 15}')
    out = report(["cavity", "--config", "cavcfg.json"])
    assert out["outputs"]["ambient_dim"] == 9
    assert out["outputs"]["dim_m"] == 1
    assert out["outputs"]["identity"]["samples"] == 15

    # korn measurement agreement between the two routes.
    out = report(
        ["cavity", "--dim", "2", "--modes", "2", "--korn", "--samples", "10"]
    )
    korn = out["outputs"]["korn"]
    assert korn["kappa"] >= 1.0
    assert abs(korn["kappa"] - korn["kappa_maximizer"]) <= 1e-6 * korn["kappa"]

    # Byte stability: identical runs produce identical bytes.
    run(["incline", "--space", "G2.csv", "--l", "L2.csv", "--m", "M45.csv",
         "--json", "a.json"])
    run(["incline", "--space", "G2.csv", "--l", "L2.csv", "--m", "M45.csv",
         "--json", "b.json"])
    with open("a.json", "rb") as fa, open("b.json", "rb") as fb:
        assert fa.read() == fb.read()

    run(["cavity", "--dim", "2", "--modes", "2", "--korn", "--json", "c1.json"])
    run(["cavity", "--dim", "2", "--modes", "2", "--korn", "--json", "c2.json"])
    with open("c1.json", "rb") as fa, open("c2.json", "rb") as fb:
        assert fa.read() == fb.read()

    # OBLIQ_THREADS env feeds --threads without changing the output.
    env = dict(os.environ, OBLIQ_THREADS="4")
    res = subprocess.run(
        [OBLIQ, "cavity", "--dim", "2", "--modes", "2", "--korn",
         "--json", "c3.json"],
        capture_output=True, text=True, env=env,
    )
    assert res.returncode == 0, res.stderr
    with open("c1.json", "rb") as fa, open("c3.json", "rb") as fb:
        assert fa.read() == fb.read()

    print("cli_test: all checks passed")


if __name__ == "__main__":
    main()
