#!/usr/bin/env python3
"""
Root pytest hooks for the shadow_packer suites.

Full packing runs and the assembly round trips take minutes, so they carry
the `slow` marker and can be selected or left out from the command line.

Module Attributes:
  SLOW_MARKER (str): Name of the marker on long-running tests.

(C) Copyright 2021 Jonathan Casey.  All Rights Reserved Worldwide.
"""
import pytest



SLOW_MARKER = 'slow'



def pytest_addoption(parser):
    """
    Registers the options that select tests by the slow marker.

    Args:
      parser (Parser): pytest's option parser.
    """
    group = parser.getgroup('shadow_packer', 'shadow_packer test selection')
    group.addoption('--run-only-slow', action='store_true', default=False,
            help='Run only the slow tests: packing optimizations and'
                + ' integration round trips.')
    group.addoption('--skip-slow', action='store_true', default=False,
            help='Leave out the slow tests, e.g. for a quick unit pass.')



def pytest_configure(config):
    """
    Declares the slow marker so `--strict-markers` accepts it.

    Args:
      config (Config): The pytest config.
    """
    config.addinivalue_line('markers', f'{SLOW_MARKER}: runs a packing'
            + ' optimization or an end-to-end suite; minutes rather than'
            + ' seconds.')



def _skip_items(items, want_slow, reason):
    """
    Adds a skip marker to every item whose slowness matches `want_slow`.

    Args:
      items ([Item]): Collected test items.
      want_slow (bool): True to skip the slow items, False for the others.
      reason (str): Reason shown in the pytest summary.
    """
    skip = pytest.mark.skip(reason=reason)
    for item in items:
        if (SLOW_MARKER in item.keywords) == want_slow:
            item.add_marker(skip)



def pytest_collection_modifyitems(config, items):
    """
    Applies `--run-only-slow` and `--skip-slow` to the collected items.  Both
    together skip everything.

    Args:
      config (Config): The pytest config.
      items ([Item]): Collected test items.
    """
    if config.getoption('--run-only-slow'):
        _skip_items(items, False, 'not slow; --run-only-slow given')
    if config.getoption('--skip-slow'):
        _skip_items(items, True, 'slow; --skip-slow given')
