"""
Regenerate the ``expected`` blocks of the golden fixtures from their inputs.

Run after an intentional change to a report, then review the diff before
committing the rewritten fixture files.
"""
import argparse
import sys
from pathlib import Path

import orjson

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.config import get_fixtures_dir  # noqa: E402
from src.services.golden import GOLDEN_CHECKS, compare_expected, freeze, load_fixture  # noqa: E402
from src.utils.errors import SkewCodeError  # noqa: E402


def freeze_file(path: Path, guard: int = None, dry_run: bool = False) -> bool:
    """Rewrite one fixture; returns whether its expected block changed."""
    document = load_fixture(path)
    frozen = freeze(document, guard, name=path.stem)
    changes = compare_expected(frozen["expected"], document["expected"])
    if changes:
        print(f"~ {path.name}: {len(changes)} value(s) changed")
        for line in changes:
            print(f"    {line}")
        if not dry_run:
            path.write_bytes(orjson.dumps(frozen, option=orjson.OPT_INDENT_2) + b"\n")
    else:
        print(f"= {path.name}: unchanged")
    return bool(changes)


def main():
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument("--fixtures", type=Path, default=None, help="fixture directory")
    parser.add_argument("--guard", type=int, default=None, help="enumeration guard")
    parser.add_argument("--dry-run", action="store_true", help="report changes without writing")
    parser.add_argument("names", nargs="*", help=f"fixtures to freeze (default: {', '.join(GOLDEN_CHECKS)})")
    args = parser.parse_args()

    directory = args.fixtures or get_fixtures_dir()
    names = args.names or sorted(GOLDEN_CHECKS)
    changed = 0
    for name in names:
        path = directory / f"{name}.json"
        if not path.exists():
            print(f"! {path.name}: missing")
            continue
        changed += freeze_file(path, args.guard, args.dry_run)
    print(f"\n{changed} fixture(s) {'would change' if args.dry_run else 'rewritten'}")


if __name__ == "__main__":
    try:
        main()
    except SkewCodeError as e:
        print(f"\nFreeze failed: {e.error_code}: {e.message}")
        sys.exit(e.exit_code)
