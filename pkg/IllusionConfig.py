import math

from Common.IllusionException import CIllusionException, ErrCode


class CIllusionConfig:
    def __init__(self, conf=None):
        if conf is None:
            conf = {}
        conf = ConfigWithCheck(dict(conf))

        # observation tolerances for the illusion check
        self.eps_exact = conf.get("eps_exact", 0)
        self.eps_caravan = conf.get("eps_caravan", 1e-9)
        self.eps_disks_rel = conf.get("eps_disks_rel", 1e-3)  # times sensing range
        self.eps_pos_rel = conf.get("eps_pos_rel", 1e-3)

        # caravan
        self.d_far = conf.get("d_far", 1e6)

        # squeeze
        self.p_max = conf.get("p_max", 200)

        # orchestration
        self.max_plateau = conf.get("max_plateau", 10000)
        self.path_period = conf.get("path_period", 10)
        self.lookahead = conf.get("lookahead", 5)
        self.park_margin_rel = conf.get("park_margin_rel", 0.1)
        self.heading_tol = conf.get("heading_tol", math.pi / 8)
        self.heading_gain = conf.get("heading_gain", 1.0)

        self.print_warning = conf.get("print_warning", True)
        self.print_info = conf.get("print_info", False)

        conf.check()
        self.check()

    def check(self):
        if self.eps_exact != 0:
            raise CIllusionException("eps_exact must be 0: exact systems compare for equality", ErrCode.PARA_ERROR)
        if self.eps_caravan < 0 or self.eps_disks_rel < 0 or self.eps_pos_rel < 0:
            raise CIllusionException("tolerances must be non-negative", ErrCode.PARA_ERROR)
        if self.d_far <= 0:
            raise CIllusionException(f"d_far must be positive, got {self.d_far}", ErrCode.PARA_ERROR)
        if not isinstance(self.p_max, int) or self.p_max < 1:
            raise CIllusionException(f"p_max must be a positive integer, got {self.p_max}", ErrCode.PARA_ERROR)
        if self.max_plateau < 1 or self.path_period < 1 or self.lookahead < 1:
            raise CIllusionException("max_plateau, path_period and lookahead must be >= 1", ErrCode.PARA_ERROR)

    def to_dict(self):
        return {
            "eps_exact": self.eps_exact,
            "eps_caravan": self.eps_caravan,
            "eps_disks_rel": self.eps_disks_rel,
            "eps_pos_rel": self.eps_pos_rel,
            "d_far": self.d_far,
            "p_max": self.p_max,
            "max_plateau": self.max_plateau,
            "path_period": self.path_period,
            "lookahead": self.lookahead,
            "park_margin_rel": self.park_margin_rel,
            "heading_tol": self.heading_tol,
            "heading_gain": self.heading_gain,
            "print_warning": self.print_warning,
            "print_info": self.print_info,
        }


class ConfigWithCheck:
    def __init__(self, conf):
        self.conf = conf

    def get(self, k, default_value=None):
        res = self.conf.get(k, default_value)
        if k in self.conf:
            del self.conf[k]
        return res

    def check(self):
        if len(self.conf) > 0:
            invalid_key_lst = ",".join(list(self.conf.keys()))
            raise CIllusionException(f"invalid CIllusionConfig: {invalid_key_lst}", ErrCode.PARA_ERROR)
