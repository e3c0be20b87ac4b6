# gravnav/exceptions.py


class GravNavError(Exception):
    """Базовая ошибка библиотеки: всё, что CLI превращает в CommandError."""


class OutOfCoverage(GravNavError):
    """Точка не покрыта ни одной картой набора (неверно собран сценарий)."""


class DegenerateGeometry(GravNavError):
    """Узел сетки слишком близко к точечной массе."""


class FormatError(GravNavError):
    """Битый файл сетки или списка масс; offset - байтовое смещение (или номер строки)."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (offset {offset})"
        super().__init__(message)


class DegenerateRoute(GravNavError):
    """Маршрут короче двух секунд полёта."""


class Divergence(GravNavError):
    """Численный развал механизации: скорость улетела за разумные пределы."""


class DegenerateFit(GravNavError):
    """Окно измерений не определяет эллипс (мало точек, коллинеарность, вырожденность)."""


class NotAnEllipse(GravNavError):
    """Коэффициенты коники не описывают эллипс (4AC - B^2 <= 0)."""


class WeightUnderflow(GravNavError):
    """Все ненормированные веса частиц обнулились."""


class RunFailed(GravNavError):
    """Ошибка внутри прогона Монте-Карло с контекстом (номер прогона, эпоха)."""

    def __init__(self, run_index: int, epoch: int | None, cause: Exception):
        self.run_index = run_index
        self.epoch = epoch
        self.cause = cause
        where = f"run {run_index}" + (f", epoch {epoch}" if epoch is not None else "")
        super().__init__(f"{where}: {type(cause).__name__}: {cause}")

    def __reduce__(self):
        # пул процессов пересылает исключение целиком
        return (self.__class__, (self.run_index, self.epoch, self.cause))
