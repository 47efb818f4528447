import numpy as np
import pytest

from catseries import (
    Alphabet,
    CorpusSpec,
    HiddenMarkovModel,
    MarkovChainModel,
    NdarmaModel,
    cohens_kappa,
    corpus_spec_from_dict,
    cramers_v_test,
    generate_corpus,
    generate_hmm,
    generate_mc,
    generate_ndarma,
    lag_tables,
    marginal_probabilities,
)
from catseries.inference import chi2_quantile
from catseries.series import conditional_probabilities

UNIFORM3 = [1 / 3, 1 / 3, 1 / 3]
P3 = [[0.7, 0.2, 0.1], [0.1, 0.8, 0.1], [0.2, 0.2, 0.6]]


def test_spec_validation():
    with pytest.raises(ValueError, match="rows must sum"):
        MarkovChainModel([[0.5, 0.4], [0.5, 0.5]], [0.5, 0.5])
    with pytest.raises(ValueError, match="negative"):
        MarkovChainModel([[1.2, -0.2], [0.5, 0.5]], [0.5, 0.5])
    with pytest.raises(ValueError, match="one row per hidden state"):
        HiddenMarkovModel([[1.0]], [[0.5, 0.5], [0.5, 0.5]], [1.0])
    with pytest.raises(ValueError, match="length p \\+ q \\+ 1"):
        NdarmaModel(1, 1, [0.5, 0.5], UNIFORM3)


def test_determinism_same_seed_same_series():
    model = MarkovChainModel(P3, UNIFORM3)
    a = generate_mc(model, 500, 42)
    b = generate_mc(model, 500, 42)
    c = generate_mc(model, 500, 43)
    assert (a.codes == b.codes).all()
    assert (a.codes != c.codes).any()


def test_codes_in_range():
    model = NdarmaModel(2, 1, [0.3, 0.2, 0.3, 0.2], [0.2, 0.3, 0.5])
    series = generate_ndarma(model, 400, 7)
    assert series.codes.min() >= 1 and series.codes.max() <= 3


def test_identity_transition_freezes_state():
    model = MarkovChainModel(np.eye(3), UNIFORM3)
    series = generate_mc(model, 100, 5)
    assert np.unique(series.codes).size == 1


def test_permutation_transition_is_periodic():
    cycle = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
    series = generate_mc(MarkovChainModel(cycle, UNIFORM3), 99, 11)
    assert (series.codes[3:] == series.codes[:-3]).all()
    assert np.unique(series.codes[:3]).size == 3


def test_mc_transition_calibration():
    model = MarkovChainModel(P3, UNIFORM3)
    series = generate_mc(model, 100_000, 13)
    cond = np.asarray(conditional_probabilities(lag_tables(series, 1)))
    assert np.abs(cond - np.asarray(P3).T).max() < 0.01


def test_hmm_identity_emission_reduces_to_mc():
    # identity emission makes observations reproduce the hidden chain
    hidden = HiddenMarkovModel(P3, np.eye(3), UNIFORM3)
    hmm_series = generate_hmm(hidden, 100_000, 17)
    cond_hmm = np.asarray(conditional_probabilities(lag_tables(hmm_series, 1)))
    assert np.abs(cond_hmm - np.asarray(P3).T).max() < 0.01


def test_hmm_single_state_gives_iid_with_emission_marginal():
    emission = np.array([[0.5, 0.3, 0.2]])
    model = HiddenMarkovModel([[1.0]], emission, [1.0])
    series = generate_hmm(model, 100_000, 23)
    counts = np.bincount(series.codes, minlength=4)[1:]
    expected = emission[0] * len(series)
    statistic = np.sum((counts - expected) ** 2 / expected)
    assert statistic < chi2_quantile(0.99, 2)


def test_hmm_uniform_emission_rows_look_iid():
    # hidden dynamics cannot show through uniform emissions
    model = HiddenMarkovModel(P3, np.full((3, 3), 1 / 3), UNIFORM3)
    below = 0
    runs = 500
    for i in range(runs):
        series = generate_hmm(model, 300, 1000 + i)
        report = cramers_v_test(series, 1, 0.05)
        below += report.estimates[0] <= report.upper_critical
    assert below / runs >= 0.94


def test_ndarma_pure_innovation_is_iid():
    model = NdarmaModel(0, 0, [1.0], [0.5, 0.3, 0.2])
    series = generate_ndarma(model, 100_000, 3)
    assert np.abs(marginal_probabilities(series) - [0.5, 0.3, 0.2]).max() < 0.01
    kappa = cohens_kappa(lag_tables(series, 1)).value
    assert abs(kappa) < 0.02


def test_ndarma_pure_copy_is_constant():
    model = NdarmaModel(1, 0, [1.0, 0.0], [0.2, 0.3, 0.5])
    series = generate_ndarma(model, 200, 9)
    assert np.unique(series.codes).size == 1


def test_ndarma_kappa_matches_mixing_weight():
    phi = 0.7
    model = NdarmaModel(1, 0, [phi, 1 - phi], [0.2, 0.3, 0.5])
    series = generate_ndarma(model, 100_000, 3)
    kappa = cohens_kappa(lag_tables(series, 1)).value
    assert kappa == pytest.approx(phi, abs=0.02)


def test_corpus_layout_and_determinism():
    mc = MarkovChainModel(P3, UNIFORM3)
    nd = NdarmaModel(1, 0, [0.6, 0.4], [0.2, 0.3, 0.5])
    spec = CorpusSpec(groups=((mc, 4), (nd, 2)), length=120, seed=77)
    corpus, labels = generate_corpus(spec)
    assert len(corpus) == 6
    assert labels == [1, 1, 1, 1, 2, 2]
    corpus2, _ = generate_corpus(spec)
    for a, b in zip(corpus, corpus2):
        assert (a.codes == b.codes).all()
    # counter-mode seeds: series i reproducible in isolation
    assert (corpus[2].codes == generate_mc(mc, 120, 77 + 2).codes).all()
    assert (corpus[4].codes == generate_ndarma(nd, 120, 77 + 4).codes).all()


def test_corpus_spec_json_round_trip():
    mc = MarkovChainModel(P3, UNIFORM3)
    hmm = HiddenMarkovModel(P3, np.full((3, 3), 1 / 3), UNIFORM3)
    nd = NdarmaModel(1, 1, [0.5, 0.3, 0.2], [0.2, 0.3, 0.5], burn_in=100)
    spec = CorpusSpec(groups=((mc, 2), (hmm, 1), (nd, 1)), length=50, seed=5, alphabet=Alphabet(("x", "y", "z")))
    rebuilt = corpus_spec_from_dict(spec.to_dict())
    assert rebuilt.to_dict() == spec.to_dict()
    corpus_a, labels_a = generate_corpus(spec)
    corpus_b, labels_b = generate_corpus(rebuilt)
    assert labels_a == labels_b
    for a, b in zip(corpus_a, corpus_b):
        assert (a.codes == b.codes).all()
        assert a.alphabet.symbols == ("x", "y", "z")


def test_corpus_spec_errors():
    with pytest.raises(ValueError, match="missing required key"):
        corpus_spec_from_dict({"groups": [{"family": "mc", "transition": P3, "initial": UNIFORM3}]})
    with pytest.raises(ValueError, match="unknown model family"):
        corpus_spec_from_dict({"seed": 1, "length": 5, "groups": [{"family": "arma"}]})
    mc = MarkovChainModel(P3, UNIFORM3)
    nd2 = NdarmaModel(0, 0, [1.0], [0.5, 0.5])
    with pytest.raises(ValueError, match="same number of categories"):
        CorpusSpec(groups=((mc, 1), (nd2, 1)), length=10, seed=1)


def test_marginal_calibration_within_bands():
    # long-run occupancy of the chain within 3/sqrt(T) of the stationary law
    model = MarkovChainModel(P3, UNIFORM3)
    series = generate_mc(model, 100_000, 19)
    P = np.asarray(P3)
    vals, vecs = np.linalg.eig(P.T)
    stationary = np.real(vecs[:, np.argmax(np.real(vals))])
    stationary /= stationary.sum()
    band = 3.0 / np.sqrt(len(series))
    assert np.abs(marginal_probabilities(series) - stationary).max() < 3 * band
