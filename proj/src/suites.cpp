#include "soconv/suites.hpp"
namespace soconv {
}
