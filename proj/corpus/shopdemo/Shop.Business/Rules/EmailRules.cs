using System.Text.RegularExpressions;

namespace Shop.Business.Rules
{
    internal static class EmailRules
    {
        private static readonly Regex Pattern = new Regex(@"^[^@\s]+@[^@\s]+\.[a-z]{2,}$");

        public static bool IsValid(string email)
        {
            return Pattern.IsMatch(email);
        }
    }
}
