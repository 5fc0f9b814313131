import doctest

import pytest

import slimlat.groups
import slimlat.perm


@pytest.mark.parametrize("module", [slimlat.perm, slimlat.groups])
def test_doctests(module):
    result = doctest.testmod(module)
    assert result.attempted > 0
    assert result.failed == 0
