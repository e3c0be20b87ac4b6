from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from gravnav.exceptions import GravNavError
from gravnav.gravmap import BACKGROUND_GRADIENT, GridExtent, load_masses, save_grid, synthesize_grid

# запас вокруг масс, если границы сетки не заданы, градусы
DEFAULT_MARGIN = 0.25


def _resolve(path) -> Path:
    path = Path(path)
    return path if path.is_absolute() else Path(settings.BASE_DIR) / path


class Command(BaseCommand):
    help = "Работа с сетками градиента гравитации (GGV1). synth - синтез сетки по списку точечных масс."

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest="action", required=True)
        synth = subparsers.add_parser("synth", help="Синтез сетки из файла масс `lat lon depth mass`")
        synth.add_argument("--masses", "-m", required=True, help="Текстовый файл со списком масс")
        synth.add_argument("--out", "-o", required=True, help="Путь к выходному файлу .ggv")
        synth.add_argument("--lat-min", type=float)
        synth.add_argument("--lat-max", type=float)
        synth.add_argument("--lon-min", type=float)
        synth.add_argument("--lon-max", type=float)
        synth.add_argument("--resolution", "-r", type=float, default=1 / 60,
                           help="Шаг сетки, градусы (по умолчанию 1/60)")
        synth.add_argument("--reference-altitude", type=float, default=3000.0,
                           help="Высота, на которой вычисляется градиент, м")
        synth.add_argument("--priority", type=int, default=0)
        synth.add_argument("--background", type=float, default=BACKGROUND_GRADIENT,
                           help="Фоновый градиент, с^-2")

    def handle(self, *args, **options):
        if options["action"] == "synth":
            self.synth(options)

    def synth(self, options):
        try:
            masses = load_masses(_resolve(options["masses"]))
            if not masses:
                raise CommandError("Файл масс не содержит ни одной массы")
            extent = GridExtent(
                options["lat_min"] if options["lat_min"] is not None
                else min(m.lat for m in masses) - DEFAULT_MARGIN,
                options["lat_max"] if options["lat_max"] is not None
                else max(m.lat for m in masses) + DEFAULT_MARGIN,
                options["lon_min"] if options["lon_min"] is not None
                else min(m.lon for m in masses) - DEFAULT_MARGIN,
                options["lon_max"] if options["lon_max"] is not None
                else max(m.lon for m in masses) + DEFAULT_MARGIN,
                options["resolution"],
                options["resolution"],
            )
            grid = synthesize_grid(masses, extent, options["reference_altitude"], options["background"],
                                   options["priority"])
            out = _resolve(options["out"])
            out.parent.mkdir(parents=True, exist_ok=True)
            save_grid(grid, out)
        except (GravNavError, ValidationError, OSError) as exc:
            raise CommandError(f"{type(exc).__name__}: {exc}") from exc

        self.stdout.write(f"Масс: {len(masses)}, сетка {grid}")
        self.stdout.write(self.style.SUCCESS(f"Сетка сохранена: {out}"))
