import json
import os

import pytest

from pgln_symplectic import load_triangulation

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
CORPUS = ("m003", "m004", "m015", "m129")


@pytest.fixture(scope="session")
def census_oracle():
    with open(os.path.join(FIXTURES, "census_oracle.json")) as fh:
        return json.load(fh)


@pytest.fixture(scope="session", params=CORPUS)
def corpus_tri(request):
    return load_triangulation(request.param)


def tri(name):
    return load_triangulation(name)
