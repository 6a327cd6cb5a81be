#pragma once

#include "fpbrace/brace_verify.hpp"
#include "fpbrace/classify.hpp"
#include "fpbrace/gf.hpp"
#include "fpbrace/holomorph.hpp"
#include "fpbrace/json_io.hpp"
#include "fpbrace/matfp.hpp"
#include "fpbrace/oracle.hpp"
#include "fpbrace/radical_algebra.hpp"
