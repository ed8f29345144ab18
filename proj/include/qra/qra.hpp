#pragma once

#include "qra/algebra.hpp"
#include "qra/binrel.hpp"
#include "qra/contraction.hpp"
#include "qra/dot.hpp"
#include "qra/dq.hpp"
#include "qra/error.hpp"
#include "qra/iso.hpp"
#include "qra/nonfinrep.hpp"
#include "qra/reconstruct.hpp"
#include "qra/representation.hpp"
#include "qra/structure.hpp"
#include "qra/text_format.hpp"
#include "qra/validate.hpp"
