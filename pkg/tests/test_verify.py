from heightlab.verify import verify_all


def test_tables_scope_passes_and_is_deterministic():
    a = verify_all("tables")
    b = verify_all("tables")
    assert a.ok
    assert [(c.id, c.status, c.computed) for c in a.checks] == [(c.id, c.status, c.computed) for c in b.checks]


def test_galois_scope_contains_group_lemma():
    rep = verify_all("galois", num_primes=300)
    lemma = [c for c in rep.checks if "48" in str(c.expected) or "order" in c.id]
    assert lemma and all(c.status == "pass" for c in lemma)


def test_curves_scope_records_failures_without_aborting():
    rep = verify_all("curves")
    assert rep.checks
    fails = [c.id for c in rep.failures]
    # only the D = 353 sign disagreement with the published value
    assert fails == ["disc C_353 equals the published value up to the unit convention"]
    assert "fail" in rep.summary()
