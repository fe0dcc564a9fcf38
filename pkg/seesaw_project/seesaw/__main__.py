"""`python -m seesaw <subcommand> [options]`: the management commands under their hyphenated names."""
import os
import sys

import django


def main(argv=None):
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'seesaw_project.settings')
    django.setup()
    from seesaw.cli import dispatch
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == '__main__':
    sys.exit(main())
