using System.Collections.Generic;

namespace Shop.Data.Entities
{
    public partial class Order
    {
        public void AddLine(string sku, int quantity, decimal unitPrice)
        {
            var line = new OrderLine();
            line.Sku = sku;
            line.Quantity = quantity;
            line.UnitPrice = unitPrice;
            Lines.Add(line);
        }
    }

    internal static class EntityMath
    {
        public static decimal Sum(List<OrderLine> lines)
        {
            decimal total = 0m;
            foreach (OrderLine line in lines)
            {
                total += line.UnitPrice * line.Quantity;
            }
            return total;
        }
    }
}
