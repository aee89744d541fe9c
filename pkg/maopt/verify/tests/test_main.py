# coding=utf-8
# Copyright (C) the maopt developers (2024)
#
# This file is part of maopt.
#
# maopt is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# maopt is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with maopt.  If not, see <http://www.gnu.org/licenses/>.

"""Tests for `maopt.verify.__main__`
"""

import pytest

from ... import const
from .. import __main__ as verify_cli
from ..core import SuiteResult

__author__ = 'The maopt developers'


def test_main(capsys):
    assert verify_cli.main(['--suite', 'qp', '--samples', '5']) == 0
    out = capsys.readouterr().out
    assert out.startswith('PASS qp: 5/5 passed')


def test_main_failure(caplog, capsys, monkeypatch):
    monkeypatch.setattr(verify_cli, 'run_suites', lambda *args, **kwargs: [
        SuiteResult('qp', 2, 0), SuiteResult('grid', 2, 1, .5)])
    assert verify_cli.main([]) == const.EXIT_VERIFY
    out = capsys.readouterr().out.splitlines()
    assert out == ['PASS qp: 2/2 passed (worst error 0)',
                   'FAIL grid: 1/2 passed (worst error 0.5)']
    assert 'Failed suite(s): grid' in caplog.text


def test_main_error(caplog, monkeypatch):
    def _raise(*args, **kwargs):
        raise FloatingPointError('overflow')

    monkeypatch.setattr(verify_cli, 'run_suites', _raise)
    assert verify_cli.main(['-S', 'power']) == const.EXIT_RUNTIME
    assert 'FloatingPointError: overflow' in caplog.text


@pytest.mark.parametrize('args', [
    ['--suite', 'nothing'],
    ['--samples', '0'],
])
def test_main_usage(args):
    with pytest.raises(SystemExit) as exc:
        verify_cli.main(args)
    assert exc.value.code == const.EXIT_USAGE
