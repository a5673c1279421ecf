#pragma once

#include "rlpw/analytic_ip.hpp"
#include "rlpw/bandpass.hpp"
#include "rlpw/csv.hpp"
#include "rlpw/dilation.hpp"
#include "rlpw/errors.hpp"
#include "rlpw/exactfreq.hpp"
#include "rlpw/interval.hpp"
#include "rlpw/kernels.hpp"
#include "rlpw/numcheck.hpp"
#include "rlpw/random.hpp"
#include "rlpw/rational.hpp"
#include "rlpw/spectra.hpp"
#include "rlpw/transform.hpp"
