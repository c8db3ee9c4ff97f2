#pragma once

#include <hodgekit/common.hpp>
#include <hodgekit/cyclotomic.hpp>
#include <hodgekit/errors.hpp>
#include <hodgekit/hodge.hpp>
#include <hodgekit/identities.hpp>
#include <hodgekit/lens.hpp>
#include <hodgekit/lmr.hpp>
#include <hodgekit/modroots.hpp>
#include <hodgekit/multipoly.hpp>
#include <hodgekit/parallel.hpp>
#include <hodgekit/search.hpp>
#include <hodgekit/ztheory.hpp>
