"""Padded integers: Z extended with the padding symbol."""

from typing import Union


class _Pad:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "PAD"

    def __reduce__(self):
        return (_Pad, ())


PAD = _Pad()

PaddedValue = Union[int, _Pad]


def is_pad(value: object) -> bool:
    return value is PAD


def show_value(value: PaddedValue) -> str:
    return "#" if value is PAD else str(value)
