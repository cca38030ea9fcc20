"""End-to-end checks of the dglawb command line.

Usage: cli_test.py DGLAWB SCHEMA_DIR
"""

import json
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema
from referencing import Registry, Resource

DGLAWB = ""
SCHEMAS: dict = {}
REGISTRY = Registry()


def run(*args, env=None, check_exit=None):
    proc = subprocess.run([DGLAWB, *args], capture_output=True, text=True, env=env)
    if check_exit is not None and proc.returncode != check_exit:
        raise AssertionError(
            f"dglawb {' '.join(args)} exited {proc.returncode}, expected {check_exit}\n"
            f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
        )
    return proc


def report(*args, exit_code=0):
    proc = run(*args, check_exit=exit_code)
    doc = json.loads(proc.stdout)
    conform(doc, "report")
    return doc["result"]


def conform(doc, schema):
    jsonschema.Draft202012Validator(SCHEMAS[schema], registry=REGISTRY).validate(doc)


class Commands(unittest.TestCase):
    def test_validate_cplx2_passes(self):
        self.assertTrue(report("validate", "--dgla", "builtin:CPLX2")["passed"])

    def test_kuranishi_poly_qobs(self):
        self.assertEqual(report("kuranishi", "poly", "--dgla", "builtin:QOBS", "--order", "4"), {"q1": {"[2]": 1}})

    def test_qobs_not_equivalent(self):
        res = report("gauge", "equiv", "--dgla", "builtin:QOBS", "--ring", "t^3", "--x", "e@t^2", "--y", "0")
        self.assertEqual(res["verdict"], "NotEquivalent")
        self.assertTrue(res["complete"])
        self.assertIsNone(res["witness"])
        self.assertEqual(res["level"], 2)

    def test_d2_equivalent_with_witness(self):
        res = report("gauge", "equiv", "--dgla", "builtin:D2", "--ring", "eps", "--x", "u@e", "--y", "0")
        self.assertEqual(res["verdict"], "Equivalent")
        conform(res["witness"], "element")
        moved = report("gauge", "act", "--dgla", "D2", "--ring", "eps", "--g", json.dumps(res["witness"]), "--x", "u@e")
        self.assertEqual(moved["result"]["coeffs"], [[0]])

    def test_unknown_exits_two(self):
        # HW2 has H^0 != 0, so non-equivalence cannot be certified; x,x->1 spans H^1
        res = report("gauge", "equiv", "--dgla", "HW2", "--ring", "eps", "--x", "x,x->1@e", "--y", "0", exit_code=2)
        self.assertEqual(res["verdict"], "Unknown")
        self.assertFalse(res["complete"])
        self.assertIsNone(res["witness"])
        self.assertIn("exhausted", res["diagnostic"])
        res = report("gauge", "equiv", "--dgla", "HW2", "--ring", "t3", "--x", "x,x->1@t",
                     "--y", "x,x->1@t + x,x->1@t^2")
        self.assertEqual(res["verdict"], "Equivalent")
        y = report("gauge", "act", "--dgla", "HW2", "--ring", "t3", "--g", json.dumps(res["witness"]),
                   "--x", "x,x->1@t")["result"]
        self.assertEqual(y["coeffs"][6], [1, 1])

    def test_obstruction_and_lift(self):
        ob = report("mc", "obstruct", "--dgla", "QOBS", "--ring", "t3", "--element", "e@t")
        self.assertFalse(ob["zero"])
        self.assertEqual(ob["class"], [["1/2"]])
        lift = report("mc", "lift", "--dgla", "QOBS", "--ring", "t3", "--element", "e@t")
        self.assertFalse(lift["liftable"])
        lift = report("mc", "lift", "--dgla", "D2", "--ring", "t3", "--element", "u@t")
        self.assertTrue(lift["liftable"])
        conform(lift["lift"], "element")

    def test_homotopy_round_trip_through_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            res = report("homotopy", "from-gauge", "--dgla", "HW2_d", "--ring", "x2y2",
                         "--g", "1->x@x - x->1@xy", "--x", "d@y")
            conform(res["path"], "path")
            path = pathlib.Path(tmp, "w.json")
            path.write_text(json.dumps(res["path"]))
            chk = report("homotopy", "check", "--dgla", "HW2_d", "--ring", "x2y2", "--path", str(path))
            self.assertTrue(chk["mc"])
            self.assertEqual(chk["v1"], res["y"])
            g = report("homotopy", "to-gauge", "--dgla", "HW2_d", "--ring", "x2y2", "--path", str(path))
            self.assertTrue(g["verified"])
            ev = report("homotopy", "eval", "--dgla", "HW2_d", "--ring", "x2y2", "--path", str(path), "--at", "0")
            self.assertEqual(ev["a"]["coeffs"], chk["v0"]["coeffs"])

    def test_homotopy_lift(self):
        # constant path at e⊗t over t^2, lifted to t^3 with anchor e⊗t: obstructed for QOBS
        path = {"a": {"degree": 1, "coeff_by_t_power": [[[1]]]}, "b": {"degree": 0, "coeff_by_t_power": []}}
        proc = run("homotopy", "lift", "--dgla", "QOBS", "--ring", "t3", "--path", json.dumps(path),
                   "--anchor", "e@t")
        self.assertEqual(proc.returncode, 1)
        path = {"a": {"degree": 1, "coeff_by_t_power": [[[1]]]}, "b": {"degree": 0, "coeff_by_t_power": [[[0]]]}}
        res = report("homotopy", "lift", "--dgla", "D2", "--ring", "t3", "--path", json.dumps(path), "--anchor", "u@t")
        conform(res["path"], "path")

    def test_kuranishi_commands(self):
        split = report("kuranishi", "split", "--dgla", "D2")
        self.assertEqual(split["1"]["delta"], [[1]])
        self.assertEqual(report("kuranishi", "map", "--dgla", "QOBS", "--ring", "t3", "--element", "e@t")["result"],
                         {"degree": 1, "coeffs": [[1, 0]]})
        self.assertFalse(report("kuranishi", "member", "--dgla", "QOBS", "--ring", "t3", "--element", "e@t")["member"])
        self.assertTrue(report("kuranishi", "member", "--dgla", "QOBS", "--ring", "t3", "--element", "e@t^2")["member"])
        nf = report("kuranishi", "normalize", "--dgla", "D2", "--ring", "t3", "--element", "u@t")
        self.assertEqual(nf["normal"]["coeffs"], [[0, 0]])

    def test_reports_and_cohomology(self):
        self.assertEqual(report("gauge", "report", "--dgla", "HW2")["verdict"], "etale")
        self.assertEqual(report("gauge", "report", "--morphism", "identity:POLY")["verdict"], "isomorphism")
        coh = report("cohomology", "--dgla", "D2")
        self.assertEqual(coh["1"]["dim_h"], 0)
        self.assertEqual(report("mc", "tangent", "--dgla", "QOBS")["dim"], 1)


class RoundTrips(unittest.TestCase):
    def test_export_conforms_and_reloads(self):
        for name in ["ABEL1", "D2", "QOBS", "CPLX2", "HW2", "POLY", "QOBS_d", "POLY_d"]:
            doc = json.loads(run("export", "--dgla", name, check_exit=0).stdout)
            conform(doc, "dgla")
            self.assertTrue(report("validate", "--dgla", json.dumps(doc))["passed"], name)
            again = json.loads(run("export", "--dgla", json.dumps(doc), check_exit=0).stdout)
            self.assertEqual(again, doc)

    def test_tensor_and_ring_export(self):
        doc = json.loads(run("export", "--dgla", "QOBS", "--ring", "t3", "--tensor", check_exit=0).stdout)
        conform(doc, "dgla")
        self.assertTrue(report("validate", "--dgla", json.dumps(doc))["passed"])
        ring = json.loads(run("export", "--ring", "x^2,y^2", check_exit=0).stdout)
        conform(ring, "ring")
        self.assertEqual(ring["m_basis"], ["x", "y", "xy"])

    def test_morphism_json(self):
        m = {"source": "builtin:D2", "target": "builtin:D2", "blocks": {"0": [[1]], "1": [[1]]}}
        conform(m, "morphism")
        self.assertEqual(report("gauge", "report", "--morphism", json.dumps(m))["verdict"], "isomorphism")


class Contract(unittest.TestCase):
    def test_byte_identical_output(self):
        a = run("suite", "--seed", "3", "--samples", "5", "--homotopy-samples", "3", check_exit=0).stdout
        b = run("suite", "--seed", "3", "--samples", "5", "--homotopy-samples", "3", check_exit=0).stdout
        self.assertEqual(a, b)
        self.assertNotIn("seconds", a)
        timed = json.loads(run("suite", "--samples", "2", "--homotopy-samples", "2", "--timing", check_exit=0).stdout)
        conform(timed, "report")
        self.assertIn("seconds", timed)

    def test_seed_changes_cases_not_verdicts(self):
        def verdicts(seed):
            res = report("suite", "--seed", seed, "--samples", "5", "--homotopy-samples", "3")
            return [(c["id"], c["passed"]) for c in res["checks"]]

        self.assertEqual(verdicts("1"), verdicts("2"))

    def test_broken_jacobi_fails_in_validate_stage(self):
        broken = {
            "schema_version": 1, "name": "QOBS_broken", "window": [0, 2],
            "labels": {"0": ["c"], "1": ["e"], "2": ["f"]},
            "bracket": [{"i": 1, "j": 1, "entries": [[0, 0, 0, 1, 1]]},
                        {"i": 0, "j": 1, "entries": [[0, 0, 0, 1, 1]]}],
        }
        conform(broken, "dgla")
        proc = run("suite", "--dgla", "builtin:QOBS", "--dgla", json.dumps(broken), "--samples", "5",
                   "--homotopy-samples", "3", check_exit=1)
        checks = json.loads(proc.stdout)["result"]["checks"]
        stage = {c["id"]: c for c in checks}
        self.assertFalse(stage["validate:QOBS_broken"]["passed"])
        self.assertIn("jacobi fails at (c, e, e)", stage["validate:QOBS_broken"]["detail"])
        self.assertTrue(all(c["passed"] for c in checks if c["id"] != "validate:QOBS_broken"))

    def test_env_budget_override(self):
        import os
        env = dict(os.environ, DGLAWB_POLY_ORDER="2")
        proc = run("kuranishi", "poly", "--dgla", "QOBS", env=env, check_exit=0)
        self.assertEqual(json.loads(proc.stdout)["result"], {"q1": {"[2]": 1}})
        env = dict(os.environ, DGLAWB_POLY_ORDER="0")
        proc = run("kuranishi", "poly", "--dgla", "QOBS", env=env, check_exit=1)
        self.assertIn("DGLAWB_POLY_ORDER=0", proc.stderr)

    def test_errors_exit_one_with_diagnostics(self):
        proc = run("validate", "--dgla", '{"schema_version": 1, "window": [1, 2],\n "labels": {"1": ["e"] "2": []}}',
                   check_exit=1)
        self.assertIn("<argument>:2:", proc.stderr)
        proc = run("validate", "--dgla", '{"schema_version": 1, "window": [1, 2], "labels": {"1": ["e"]},'
                   ' "bracket": [{"i": 1, "j": 1, "entries": [[0, 0, 0, 1]]}]}', check_exit=1)
        self.assertIn("/bracket/0/entries/0: expected 5 entries, got 4", proc.stderr)
        proc = run("mc", "check", "--dgla", "QOBS", "--ring", "t3", "--element", "q@t", check_exit=1)
        self.assertIn("not a basis label", proc.stderr)
        run("validate", "--dgla", "builtin:NOPE", check_exit=1)
        run("nonsense", check_exit=1)

    def test_text_format(self):
        out = run("gauge", "equiv", "--dgla", "D2", "--ring", "eps", "--x", "u@e", "--y", "0", "--format", "text",
                  check_exit=0).stdout
        self.assertEqual(out, "verdict: Equivalent (complete)\nwitness: c@e\n")


def main():
    global DGLAWB, SCHEMAS, REGISTRY
    DGLAWB = sys.argv[1]
    schema_dir = pathlib.Path(sys.argv[2])
    for f in schema_dir.glob("*.schema.json"):
        doc = json.loads(f.read_text())
        SCHEMAS[f.name.removesuffix(".schema.json")] = doc
        REGISTRY = REGISTRY.with_resource(doc["$id"], Resource.from_contents(doc))
    unittest.main(argv=[sys.argv[0], "-v"])


if __name__ == "__main__":
    main()
