from pathlib import Path

import yaml
from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from gravnav import resources
from gravnav.exceptions import GravNavError
from gravnav.harness import ScenarioConfig, SweepSpec, export, monte_carlo, prepare_scenario, run_scenario


def _resolve(path) -> Path:
    path = Path(path)
    return path if path.is_absolute() else Path(settings.BASE_DIR) / path


class Command(BaseCommand):
    help = ("Серия Монте-Карло: ИНС с фильтром частиц по измерениям гравиградиентометра. "
            "Пишет radial_error_vs_time.csv, gradient_errors.csv, sweep_summary.csv и run_manifest.yaml.")

    def add_arguments(self, parser):
        parser.add_argument(
            "--config",
            "-c",
            default=settings.GRAVNAV_DEFAULT_SCENARIO,
            help="YAML-файл сценария (относительно BASE_DIR или абсолютный)",
        )
        parser.add_argument("--runs", "-n", type=int, help="Число прогонов (перекрывает файл сценария)")
        parser.add_argument(
            "--out",
            "-o",
            default=settings.GRAVNAV_OUTPUT_DIR,
            help="Каталог для результатов",
        )
        parser.add_argument(
            "--unaided",
            action="store_true",
            default=False,
            help="Только ИНС с высотомером, без фильтра частиц",
        )
        parser.add_argument(
            "--sweep",
            action="append",
            default=[],
            help="Развёртка параметра: phase_noise=0,5e-3,10e-3 или failure_prob=0,0.1 "
                 "или section.field=v1,v2 (можно несколько раз)",
        )
        parser.add_argument("--truncate", type=float, help="Обрезать маршрут до стольких секунд")
        parser.add_argument(
            "--workers",
            "-w",
            type=int,
            default=settings.GRAVNAV_WORKERS,
            help="Число процессов (1 - последовательно)",
        )
        parser.add_argument(
            "--diagnostics",
            action="store_true",
            default=False,
            help="Дополнительно выгрузить подробные таблицы прогона 0 (истина, решение, окна, фильтр)",
        )

    def handle(self, *args, **options):
        out_dir = _resolve(options["out"])
        try:
            config = ScenarioConfig.from_yaml(_resolve(options["config"]))
            sweeps = [SweepSpec.parse(text) for text in options["sweep"]]
            config = config.with_overrides(runs=options["runs"], truncate=options["truncate"],
                                           unaided=options["unaided"], sweeps=sweeps)
            self.stdout.write(self.style.WARNING(
                f"Сценарий {config.name}: {config.runs} прогон(ов), "
                f"фильтр {'включён' if config.filter.enabled else 'выключен'}"
            ))
            inputs = prepare_scenario(config)
            self.stdout.write(f"Маршрут: {inputs.route}")
            result = monte_carlo(config, workers=max(1, options["workers"]), inputs=inputs)
            written = export(result, out_dir)
            if options["diagnostics"]:
                written += self._diagnostics(config, inputs, out_dir)
        except (GravNavError, ValidationError, OSError, yaml.YAMLError) as exc:
            raise CommandError(f"{type(exc).__name__}: {exc}") from exc

        for aggregate in result.aggregates:
            mean, std = aggregate.route_average()
            after, after_std = aggregate.route_average_after_convergence()
            self.stdout.write(
                f"{aggregate.label}: средняя ошибка {mean:.1f} ± {std:.1f} м, "
                f"после {config.convergence_time:.0f} с {after:.1f} ± {after_std:.1f} м"
            )
        for path in written:
            self.stdout.write(f"  {path}")
        self.stdout.write(self.style.SUCCESS(f"Готово: результаты в {out_dir}"))

    def _diagnostics(self, config, inputs, out_dir):
        metrics = run_scenario(config, 0, inputs, keep_diagnostics=True)
        paths = [resources.write_csv(resources.truth_dataset(inputs.truth.decimate(config.steps_per_epoch)),
                                     out_dir / "truth_states.csv")]
        paths.append(resources.write_csv(resources.navigation_dataset(metrics.navigation, inputs.truth),
                                         out_dir / "navigation.csv"))
        paths.append(resources.write_csv(
            resources.ellipse_fit_dataset(metrics.ellipse_estimates, metrics.ellipse_true_gradient),
            out_dir / "ellipse_fit.csv"))
        if metrics.diagnostics:
            paths.append(resources.write_csv(resources.fusion_diagnostics_dataset(metrics.diagnostics),
                                             out_dir / "fusion_diagnostics.csv"))
        return paths
