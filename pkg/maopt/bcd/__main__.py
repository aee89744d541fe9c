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

"""Maximise the weighted sum rate of movable-antenna scenarios

Runs a standard experiment (``--preset``), a custom configuration
(``--config``) or the scenarios of an earlier archive (``--replay``),
then writes ``trace.csv``, ``timing.csv``, ``summary.json`` and the
replayable ``scenario.json`` to the output directory.

Exit codes: 0 on success, 1 for usage errors, 2 if any stage fails.
"""

import os
import sys

from .. import (cli, const)
from ..scenario import (PRESETS, get_preset, load_archive, load_config,
                        save_archive)
from .core import (MonteCarloReport, TrialRun, run_bcd, run_monte_carlo)
from .output import write_outputs

__author__ = 'The maopt developers'

PROG = ('python -m maopt.bcd' if sys.argv[0].endswith('.py')
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

    # what to run
    source = parser.add_mutually_exclusive_group()
    source.add_argument(
        '-p',
        '--preset',
        choices=list(PRESETS),
        help='standard experiment to run',
    )
    source.add_argument(
        '-r',
        '--replay',
        metavar='PATH',
        help='scenario archive to re-run',
    )
    parser.add_argument(
        '-c',
        '--config',
        metavar='PATH',
        help='JSON scenario configuration, default: built-in defaults',
    )

    # overrides
    cli.add_seed_option(parser)
    parser.add_argument(
        '-t',
        '--trials',
        type=cli.positive_int,
        help='number of seeded trials, default: 1, or the preset\'s count',
    )
    parser.add_argument(
        '-m',
        '--mode',
        choices=const.MODES,
        help='BS movement mode, default: taken from the configuration '
             'or preset',
    )
    parser.add_argument(
        '-b',
        '--baseline',
        action='append',
        choices=list(const.BASELINES),
        help='baseline to run, may be given multiple times, default: '
             'TMA_RMA, or the preset\'s baselines',
    )

    # output and execution
    cli.add_output_option(parser)
    cli.add_nproc_option(parser)

    return parser


# -- utilities ----------------------------------------------------------------

def _plan(args):
    """Turn the command-line arguments into a list of experiments

    Returns
    -------
    sweep : `str` or `None`
        the swept configuration key

    plan : `list` of `tuple`
        ``(sweep_value, config, baselines, modes, trials)``
    """
    base = load_config(args.config)
    if args.seed is not None:
        base = base.replace(seed=args.seed)
    if args.preset is None:
        modes = [args.mode or base.mode]
        return None, [(None, base, args.baseline or ['TMA_RMA'], modes,
                       args.trials or 1)]
    preset = get_preset(args.preset)
    modes = [args.mode] if args.mode else preset.modes
    baselines = args.baseline or preset.baselines
    trials = args.trials or preset.trials
    return preset.sweep, [(value, config, baselines, modes, trials)
                          for value, config in preset.configs(base)]


def _replay(scenarios, baselines):
    """Re-run every scenario of an archive against each baseline

    Returns
    -------
    results : `list` of `tuple`
        ``(sweep_value, MonteCarloReport)`` pairs
    """
    grouped = {}
    for index, scenario in enumerate(scenarios):
        value = scenario.metadata.get('sweep_value')
        trial = scenario.metadata.get('trial', index)
        runs = grouped.setdefault(value, [])
        for baseline in baselines:
            runs.append(TrialRun(trial, scenario,
                                 run_bcd(scenario, baseline)))
    return [(value, MonteCarloReport(runs))
            for value, runs in grouped.items()]


# -- main code block ----------------------------------------------------------

def main(args=None):
    """Run the command-line optimiser
    """
    parser = create_parser()
    args = parser.parse_args(args=args)
    if args.replay:
        ignored = [flag for flag, value in (
            ('--config', args.config),
            ('--seed', args.seed is not None),
            ('--trials', args.trials),
            ('--mode', args.mode),
        ) if value]
        if ignored:
            parser.error('--replay cannot be combined with {}'.format(
                ', '.join(ignored)))
    outdir = os.path.abspath(args.out)

    # load configuration
    try:
        if args.replay:
            LOGGER.info('Loading scenarios from {}'.format(args.replay))
            sweep, plan = None, load_archive(args.replay)
            if not plan:
                raise ValueError("archive holds no scenarios")
        else:
            LOGGER.info('Loading configuration from {}'.format(
                args.config or 'built-in defaults'))
            sweep, plan = _plan(args)
        os.makedirs(outdir, exist_ok=True)
    except (OSError, ValueError) as exc:
        LOGGER.critical('Failed to load configuration from {0}: {1}'.format(
            args.replay or args.config or 'built-in defaults', exc))
        return const.EXIT_RUNTIME

    # run experiments
    try:
        if args.replay:
            results = _replay(plan, args.baseline or ['TMA_RMA'])
        else:
            results = []
            for value, config, baselines, modes, trials in plan:
                LOGGER.info('Running {0} trial(s) of {1} in {2} mode{3}'
                            .format(trials, ', '.join(baselines),
                                    ' and '.join(modes),
                                    '' if sweep is None else
                                    ' with {0}={1}'.format(sweep, value)))
                results.append((value, run_monte_carlo(
                    config, baselines=baselines, trials=trials, modes=modes,
                    nproc=args.nproc)))
    except Exception as exc:
        LOGGER.critical('Optimisation failed: {0}: {1}'.format(
            type(exc).__name__, exc))
        return const.EXIT_RUNTIME

    # write outputs
    try:
        paths = write_outputs(results, outdir, preset=args.preset,
                              sweep=sweep)
        scenarios = []
        for value, report in results:
            for scenario in report.scenarios:
                scenario.metadata['sweep_value'] = value
                scenarios.append(scenario)
        paths['scenario.json'] = os.path.join(outdir, 'scenario.json')
        if args.replay and os.path.abspath(args.replay) == paths[
                'scenario.json']:
            paths.pop('scenario.json')
        else:
            save_archive(scenarios, paths['scenario.json'])
    except (OSError, ValueError) as exc:
        LOGGER.critical('Failed to write output to {0}: {1}'.format(
            outdir, exc))
        return const.EXIT_RUNTIME

    for name, path in paths.items():
        LOGGER.info('{0} written to {1}'.format(name, path))
    return const.EXIT_SUCCESS


# -- run from command-line ----------------------------------------------------

if __name__ == '__main__':
    sys.exit(main())
