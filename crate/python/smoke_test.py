"""Smoke test for the podles extension module. Run with pytest or directly."""

import json

import podles


def test_scalars():
    x = podles.Scalar("qint(3)")
    assert str(x) == "q^4 + q^2 + 1"
    assert x.classical_limit() == ("3", "1")
    assert (podles.Scalar("q") * podles.Scalar("q^-1")) == podles.Scalar("1")
    assert abs(podles.Scalar("lambda").eval(1.0)) < 1e-15


def test_elements():
    z, zb = podles.Element("z"), podles.Element("zb")
    assert z.comm(zb) == podles.Element("(q^-2 - 1) + (q^-2 - 1)*zb*z")
    assert z * zb == podles.Element("q^-2*zb*z + q^-2 - 1")
    assert podles.Element("zb*z").d() == podles.Element("zb*dz + q^2*z*dzb")
    assert podles.Element("z*dz").star() == podles.Element("dzb*zb")
    assert podles.Element("Zp").act(z) == podles.Element("s*z^2")
    assert podles.Element("dz").grade == 1
    assert podles.Element("Zm*Zp").kind == "vector"
    assert json.loads(z.to_json())


def test_integration_and_brackets():
    assert str(podles.integrate("rhoi^2")) == "1/(q^4 + q^2 + 1)"
    assert str(podles.integrate("rhoi^4", domain="plane")) == "1/(q^4 + q^2 + 1)"
    assert podles.poisson_bracket("zb", "z") == "1 + zb * z"
    assert podles.poisson_bracket("wb", "w") == "(u + u^2)"
    try:
        podles.integrate("1", domain="plane")
    except podles.NotIntegrable:
        pass
    else:
        raise AssertionError("expected NotIntegrable")


def test_patch():
    w = podles.PatchElement("w")
    assert w.inverse() == podles.PatchElement("z")
    assert (w * podles.PatchElement("z") - podles.PatchElement("1")).is_zero()


def test_errors_and_verify():
    try:
        podles.Element("z*)")
    except podles.ParseError as e:
        assert isinstance(e, podles.PodlesError)
        assert isinstance(e, ValueError)
    else:
        raise AssertionError("expected ParseError")
    ok, report = podles.verify("xi")
    assert ok and json.loads(report)
    out, code = podles.run(["normalize", "z*zb"])
    assert code == 0 and "zb * z" in out


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print("ok", name)
