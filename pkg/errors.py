#!/usr/bin/env python3
"""
Kļūdu klases Zaka transformācijas un rāmju aprēķiniem
"""


class ZakFrameError(Exception):
    """Visu šīs pakotnes kļūdu bāzes klase"""


class OrderRangeError(ZakFrameError, OverflowError):
    """Ermita funkcijas kārta ārpus atbalstītā diapazona"""


class PreconditionError(ZakFrameError, ValueError):
    """Nav izpildīts operācijas priekšnosacījums"""


class UnsupportedOperationError(ZakFrameError, NotImplementedError):
    """Operācija nav atbalstīta šiem parametriem"""


class TruncationError(ZakFrameError, RuntimeError):
    """Pieprasīto precizitāti nevar sasniegt ar pieļaujamo nogriešanu"""


class DegenerateConfigurationError(ZakFrameError, ValueError):
    """Periodiskajā konfigurācijā ir sakrītošas klases"""


class SeriesDomainError(ZakFrameError, ValueError):
    """Ģeometriskā rinda diverģē (|q| >= 1)"""


class SliceLevelError(ZakFrameError, ValueError):
    """Šķēluma līmenis nedod reālas vērtības"""


class CannotCertifyError(ZakFrameError, RuntimeError):
    """Zīmes maiņu nevar pierādīt ar pieejamajiem novērtējumiem"""


class QuadratureError(ZakFrameError, ArithmeticError):
    """Kvadratūra nekonverģēja"""


class UnsupportedDilationError(ZakFrameError, ValueError):
    """Dilatācijai nav zināmas tabulētās nulles"""
