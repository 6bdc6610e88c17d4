#pragma once

#include "qcorr/bloch.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/models.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/qmat.hpp"
#include "qcorr/random.hpp"
#include "qcorr/state.hpp"
#include "qcorr/sweep.hpp"
#include "qcorr/textio.hpp"
