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

"""Run the built-in numerical property suites

Each suite prints how many of its random instances passed.  The exit
code is 0 when every check passes and 3 when any fails.
"""

import os
import sys

from .. import (cli, const)
from .core import (SUITES, run_suites)

__author__ = 'The maopt developers'

PROG = ('python -m maopt.verify' if sys.argv[0].endswith('.py')
        else os.path.basename(sys.argv[0]))
LOGGER = cli.logger(name=PROG.split('python -m ').pop())


# -- parse command-line -------------------------------------------------------

def create_parser():
    """Create a command-line parser for this entry point
    """
    parser = cli.create_parser(
        prog=PROG,
        description=__doc__,
    )
    parser.add_argument(
        '-S',
        '--suite',
        default='all',
        choices=['all'] + list(SUITES),
        help='suite to run, default: %(default)s',
    )
    parser.add_argument(
        '-n',
        '--samples',
        type=cli.positive_int,
        help='random instances per suite, default: each suite\'s own',
    )
    cli.add_seed_option(parser, default=0,
                        help='seed for the random instances, '
                             'default: %(default)s')
    return parser


# -- main code block ----------------------------------------------------------

def main(args=None):
    """Run the property suites
    """
    parser = create_parser()
    args = parser.parse_args(args=args)

    LOGGER.info('Running {} suite(s)'.format(args.suite))
    try:
        results = run_suites(args.suite, samples=args.samples,
                             seed=args.seed)
    except Exception as exc:
        LOGGER.critical('Suite {0} failed to run: {1}: {2}'.format(
            args.suite, type(exc).__name__, exc))
        return const.EXIT_RUNTIME

    for result in results:
        print(('PASS ' if result.passed else 'FAIL ') + str(result))
    failed = [result.name for result in results if not result.passed]
    if failed:
        LOGGER.critical('Failed suite(s): {}'.format(', '.join(failed)))
        return const.EXIT_VERIFY
    LOGGER.info('All checks passed')
    return const.EXIT_SUCCESS


# -- run from command-line ----------------------------------------------------

if __name__ == '__main__':
    sys.exit(main())
