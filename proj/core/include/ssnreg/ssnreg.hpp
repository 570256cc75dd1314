#pragma once

#include "ssnreg/cd.hpp"
#include "ssnreg/error.hpp"
#include "ssnreg/gram_cache.hpp"
#include "ssnreg/harness.hpp"
#include "ssnreg/kkt.hpp"
#include "ssnreg/path.hpp"
#include "ssnreg/penalty.hpp"
#include "ssnreg/problem.hpp"
#include "ssnreg/simgen.hpp"
#include "ssnreg/ssn.hpp"
#include "ssnreg/version.hpp"
