"""Shared test plumbing: status lines that bypass output capture."""

import sys

_capture_manager = None


def pytest_configure(config):
    global _capture_manager
    _capture_manager = config.pluginmanager.getplugin("capturemanager")


def announce(tag: str, status: str, detail: str) -> None:
    """Print a one-line status report that stays visible in the terminal
    even while pytest captures test output."""
    message = f"\n[{tag}] {status}: {detail}\n"
    if _capture_manager is not None:
        with _capture_manager.global_and_fixture_disabled():
            sys.stdout.write(message)
            sys.stdout.flush()
    else:
        sys.stdout.write(message)
        sys.stdout.flush()
