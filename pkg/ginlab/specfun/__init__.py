from ginlab.specfun.bessel import bessel_i
from ginlab.specfun.bessel import bessel_i_eval
from ginlab.specfun.bessel import bessel_k
from ginlab.specfun.gamma import erf
from ginlab.specfun.gamma import exp_integral_e1
from ginlab.specfun.gamma import inc_beta_reg
from ginlab.specfun.gamma import inc_beta_reg_int_complex
from ginlab.specfun.gamma import log_barnes_g
from ginlab.specfun.gamma import log_gamma
from ginlab.specfun.gamma import log_reg_gamma_upper_int
from ginlab.specfun.gamma import polylog_negint
from ginlab.specfun.gamma import reg_gamma_lower
from ginlab.specfun.gamma import reg_gamma_upper
from ginlab.specfun.meijer import product_weight
from ginlab.specfun.meijer import product_weight_recursive
from ginlab.specfun.meijer import truncated_product_weight
from ginlab.specfun.orthopoly import hermite_phys
from ginlab.specfun.orthopoly import laguerre
from ginlab.specfun.results import EvalResult
