#!/usr/bin/env python3
"""
The command line entry.  Sub-commands:
- `pack <config>`: packing run (`pack` or `incremental` mode per the config).
- `assemble <config>`: part assembly run.
- `bake <mesh> <output>`: bake the SDF grid of one mesh.
- `render <result> <config>`: re-render the views of a finished run.

Usage: `python -m shadow_packer.main [--log-level LEVEL] <sub-command> ...`

Module Attributes:
  logger (Logger): Logger for this module.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import argparse
import logging
import sys

from shadow_packer.cli import commands
from shadow_packer.general import config
from shadow_packer.geometry import grid_spec



if __name__ == '__main__':                                  # Ignored by CodeCov
    # Since no unit testing here, code kept at absolute minimum
    logger = logging.getLogger('shadow_packer.main')
else:
    logger = logging.getLogger(__name__)



def _add_run_options(sub_parser):
    """
    Adds the options shared by the sub-commands that read a run config.

    Args:
      sub_parser (ArgumentParser): The sub-command parser.
    """
    sub_parser.add_argument('--set', dest='overrides', action='append',
            default=[], metavar='SECTION.KEY=VALUE',
            help='Override a run config field; repeatable.')
    sub_parser.add_argument('--seed', type=int, default=None,
            help='Shortcut for --set run.seed=SEED.')
    sub_parser.add_argument('--iterations', type=int, default=None,
            help='Shortcut for --set run.iterations=N.')
    sub_parser.add_argument('--output-dir', default=None,
            help='Shortcut for --set "run.output dir=DIR".')



def build_parser():
    """
    Builds the argument parser.

    Returns:
      (ArgumentParser): The parser.
    """
    parser = argparse.ArgumentParser(prog='shadow_packer',
            description='Silhouette-guided packing and assembly of meshes.')
    parser.add_argument('--log-level', default=None,
            help='Override the log level of the root logger and of the'
                + ' handlers that allow it (e.g. DEBUG, INFO, disabled).')
    subparsers = parser.add_subparsers(dest='command', required=True)

    pack_parser = subparsers.add_parser('pack', help='Run a packing.')
    pack_parser.add_argument('config', help='Run config file.')
    _add_run_options(pack_parser)

    assemble_parser = subparsers.add_parser('assemble',
            help='Reassemble parts into a whole.')
    assemble_parser.add_argument('config', help='Run config file.')
    _add_run_options(assemble_parser)

    bake_parser = subparsers.add_parser('bake', help='Bake a mesh SDF grid.')
    bake_parser.add_argument('mesh', help='OBJ file.')
    bake_parser.add_argument('output', help='Grid file to write.')
    bake_parser.add_argument('--dims', type=int,
            default=grid_spec.DEFAULT_OBJECT_DIMS,
            help='Grid nodes per axis.')

    render_parser = subparsers.add_parser('render',
            help='Re-render the views of a result.')
    render_parser.add_argument('result', help='Result JSON file.')
    render_parser.add_argument('config', help='Run config of the result.')
    render_parser.add_argument('--threshold', type=float, default=None,
            help='Binarize the renders at this level.')
    _add_run_options(render_parser)

    return parser



def collect_overrides(args):
    """
    Merges the shortcut options into the `--set` overrides.  Shortcuts come
    last so they win over `--set` of the same field.

    Args:
      args (Namespace): Parsed arguments.

    Returns:
      ([str]): The overrides.
    """
    overrides = list(args.overrides)
    if args.seed is not None:
        overrides.append(f'run.seed={args.seed}')
    if args.iterations is not None:
        overrides.append(f'run.iterations={args.iterations}')
    if args.output_dir is not None:
        overrides.append(f'run.output dir={args.output_dir}')
    return overrides



def run(argv=None):
    """
    Parses the arguments and runs the chosen sub-command.  The logger must
    already be initialized.

    Args:
      argv ([str] or None): Arguments; `sys.argv[1:]` if None.

    Returns:
      (int): The exit code.
    """
    args = build_parser().parse_args(argv)
    if args.command == 'bake':
        return commands.cmd_bake(args.mesh, args.output, args.dims)
    overrides = collect_overrides(args)
    if args.command == 'pack':
        return commands.cmd_pack(args.config, overrides)
    if args.command == 'assemble':
        return commands.cmd_assemble(args.config, overrides)
    return commands.cmd_render(args.result, args.config, overrides,
            args.threshold)



def main():
    """
    Launches the command line app.
    """
    args, _ = build_parser().parse_known_args()
    config.init_logger(args.log_level)
    sys.exit(run())



if __name__ == '__main__':                                  # Ignored by CodeCov
    # Since no unit testing here, code kept at absolute minimum
    main()
