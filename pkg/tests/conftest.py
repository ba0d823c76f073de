import numpy as np
import pytest

import gzclust as gz


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # Absorb any one-time backend compilation so timed assertions see
    # steady-state speed.
    gz.warmup()


@pytest.fixture
def blob_case():
    """Well-separated 3-blob dataset with matching unanimous votes."""
    features, labels = gz.synth_blobs(300, 3, 4, separation=9.0, spread=1.0, seed=7)
    votes = gz.blob_votes(features, labels, 3)
    return features, labels, votes


@pytest.fixture
def two_question_schema():
    return gz.QuestionSchema(
        (
            gz.Question("shape", ("round", "boxy", "other")),
            gz.Question("bright", ("yes", "no")),
        )
    )
