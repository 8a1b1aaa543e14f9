import pytest

from e10pairs.errors import DomainError
from e10pairs.genus import predicted_K_genus
from e10pairs.verify import Envelope, mutations, run_suite


def test_small_envelope_suites():
    env = Envelope(k_max=12, max_height=2, disc_k_max=10, pipeline_ks=(3, 4), embeddings_per_k=2)
    for name in ("lemma1", "lemma2", "theorem1"):
        report = run_suite(name, env)
        assert report.passed, report.to_dict()
    lemma4 = run_suite("lemma4", env)
    by_name = {r.name: r for r in lemma4.results}
    assert not by_name["mass_stepwise_vs_closed"].passed
    assert "k=3 (E0)" in by_name["mass_stepwise_vs_closed"].detail
    assert lemma4.first_failure == "mass_stepwise_vs_closed"
    assert all(r.passed for n, r in by_name.items() if n != "mass_stepwise_vs_closed")


def test_report_shape():
    d = run_suite("theorem1", Envelope(k_max=5)).to_dict()
    assert list(d) == ["suite", "passed", "first_failure", "properties"]
    assert [p["name"] for p in d["properties"]] == ["constant", "zeta_bound", "weyl_order", "small_k_and_instances"]


def test_unknown_suite():
    with pytest.raises(DomainError):
        run_suite("lemma3")


def test_mutations_cover_signs_and_subscripts():
    s = predicted_K_genus(6).locals[2]
    assert len(mutations(s)) == 5
    assert len(mutations(predicted_K_genus(3).locals[2])) == 1
