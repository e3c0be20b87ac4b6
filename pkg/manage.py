#!/usr/bin/env python
"""
Точка входа симулятора:
    python manage.py simulate -c scenarios/liverpool_toulouse.yaml
    python manage.py gravmap synth -m scenarios/example_masses.txt -o output/anomalies.ggv
    python manage.py test gravnav
"""
import os
import sys


def main():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install the packages from requirements.txt "
            "into the active environment."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
