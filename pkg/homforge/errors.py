"""
Иерархия исключений homforge.
Все ошибки библиотеки наследуются от HomforgeError; CLI сопоставляет их с кодами выхода.
"""

from typing import Any, Optional


class HomforgeError(Exception):
    """Базовое исключение для ошибок homforge"""
    pass


class InputError(HomforgeError):
    """Некорректные входные данные (файл, строка многочлена, матрица)"""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        if location:
            message = f"{message} (в {location})"
        super().__init__(message)


class UnknownVariableError(InputError):
    """Многочлен содержит переменную, не объявленную в кольце"""
    pass


class NotACycleError(InputError):
    """Элемент, который нужно убить, не является циклом"""
    pass


class DifferentialError(InputError):
    """Нарушено условие ∂∘∂ = 0"""

    def __init__(self, message: str, index: Optional[int] = None, entry: Optional[tuple] = None):
        self.index = index
        self.entry = entry
        super().__init__(message)


class UnsupportedBackendError(HomforgeError):
    """Операция не поддерживается для данного бэкенда алгебры"""
    pass


class MismatchError(HomforgeError):
    """Несогласованные алгебры, источники или цели отображений"""
    pass


class ZeroComplexError(HomforgeError):
    """Операция не определена для нулевого комплекса"""
    pass


class TruncationError(HomforgeError):
    """Граница усечения резольвенты слишком мала"""
    pass


class InfeasibleLiftError(HomforgeError):
    """Продолжение гомотопии невозможно в указанной степени"""

    def __init__(self, message: str, degree: int):
        self.degree = degree
        super().__init__(message)


class ShapeError(HomforgeError):
    """Треугольник или объект не имеет требуемой формы"""
    pass


class InternalInconsistencyError(HomforgeError):
    """Результат противоречит теории; сопровождается дампом состояния"""

    def __init__(self, message: str, state: Optional[dict[str, Any]] = None):
        self.state = state or {}
        super().__init__(message)
