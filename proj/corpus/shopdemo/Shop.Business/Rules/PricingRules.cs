namespace Shop.Business.Rules
{
    public static class PricingRules
    {
        private const decimal LoyaltyDiscount = 0.95m;

        public static decimal ApplyDiscount(decimal amount, int customerId)
        {
            if (customerId % 10 == 0)
            {
                return amount * LoyaltyDiscount;
            }
            return amount;
        }
    }
}
