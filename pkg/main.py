"""Entry point: python main.py <subcommand> [options]."""

import sys

from dotenv import load_dotenv

load_dotenv()

from pipelines.origon.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
