namespace Shop.Web.Helpers
{
    public static class PriceFormatter
    {
        public static string Format(decimal amount)
        {
            return "$" + amount.ToString("0.00");
        }
    }
}
