"""One test per acceptance criterion, at the stated tolerances."""

import pytest

from fracwave import acceptance


@pytest.mark.parametrize(
    "cid,name,func", acceptance.CRITERIA, ids=[f"{c}-{n}" for c, n, _ in acceptance.CRITERIA]
)
def test_criterion(cid, name, func, acceptance_log):
    (outcome,) = acceptance.run(ids={cid})
    line = outcome.line()
    acceptance_log.append(line)
    print(line)
    assert outcome.passed, line
