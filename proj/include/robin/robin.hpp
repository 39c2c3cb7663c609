#pragma once

#include "robin/certified_real.hpp"
#include "robin/prime_engine.hpp"
#include "robin/factorization.hpp"
#include "robin/robin_functional.hpp"
#include "robin/canonicalizer.hpp"
#include "robin/asymptotics.hpp"
#include "robin/generators.hpp"
#include "robin/scan.hpp"
#include "robin/report.hpp"
